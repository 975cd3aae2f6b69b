#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace hscomp {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RadiusExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BallTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element payload of a base group. Carries no group reference; every
// operation takes the owning BaseGroup explicitly and validates the kind.
struct GroupElem {
  struct IntPayload {
    std::int64_t n = 0;
    friend bool operator==(IntPayload, IntPayload) = default;
  };
  struct FiniteIdx {
    std::int32_t i = 0;
    friend bool operator==(FiniteIdx, FiniteIdx) = default;
  };
  // Reduced word in signed generator ids (+k = generator k, -k = its inverse,
  // 1-based). No adjacent x, x^-1.
  using FreeWord = std::vector<std::int32_t>;
  using Parts = std::vector<GroupElem>;

  std::variant<IntPayload, FiniteIdx, FreeWord, Parts> payload;

  bool operator==(const GroupElem&) const = default;

  static GroupElem integer(std::int64_t n) { return GroupElem{IntPayload{n}}; }
  static GroupElem finite(std::int32_t i) { return GroupElem{FiniteIdx{i}}; }
  static GroupElem word(FreeWord w) { return GroupElem{std::move(w)}; }
  static GroupElem tuple(Parts p) { return GroupElem{std::move(p)}; }
};

// Canonical payload order: integers by (|n|, sign with positive first);
// finite elements by table index; free words shortlex with +k before -k;
// tuples lexicographic. Used for tie-breaking everywhere downstream.
bool payload_less(const GroupElem& a, const GroupElem& b);

struct LengthAxiomReport {
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

class BaseGroup : public std::enable_shared_from_this<BaseGroup> {
 public:
  enum class Kind { Finite, Integers, Free, Product };

  static std::shared_ptr<const BaseGroup> integers();
  static std::shared_ptr<const BaseGroup> free_group(int rank);
  // Full multiplication table (row i, column j holds index of x_i * x_j),
  // names for serialization, and the declared generating subset.
  static std::shared_ptr<const BaseGroup> finite(std::vector<std::string> names,
                                                 std::vector<std::vector<int>> table,
                                                 std::vector<int> generator_indices);
  // Cyclic group of order n with names e, <letter>, <letter>2, ... and
  // generators {g, g^-1}.
  static std::shared_ptr<const BaseGroup> cyclic(int n, const std::string& letter);
  static std::shared_ptr<const BaseGroup> product(std::shared_ptr<const BaseGroup> a,
                                                  std::shared_ptr<const BaseGroup> b);
  // Quotient of a finite group by a normal subgroup, elements named after
  // canonical coset representatives. Throws ConfigError if not normal.
  static std::shared_ptr<const BaseGroup> quotient(std::shared_ptr<const BaseGroup> g,
                                                   const std::vector<GroupElem>& normal_subgroup);

  Kind kind() const { return kind_; }
  bool finite_universe() const;       // the whole group is finite
  int finite_order() const;           // Finite only
  int free_rank() const { return rank_; }
  const std::vector<std::shared_ptr<const BaseGroup>>& factors() const { return factors_; }

  GroupElem identity() const;
  bool is_identity(const GroupElem& g) const;
  GroupElem mul(const GroupElem& a, const GroupElem& b) const;
  GroupElem inv(const GroupElem& a) const;
  bool valid(const GroupElem& g) const;  // payload kind and range check

  // Symmetric generating set, identity excluded, deterministic order.
  const std::vector<GroupElem>& generators() const { return gens_; }

  std::string key(const GroupElem& g) const;      // canonical string form
  GroupElem parse(const std::string& s) const;    // inverse of key()

  // Word length over the generating set. Closed form where provably equal to
  // the Cayley-graph distance (|n| on Z, letter count on free groups, factor
  // sum on products); BFS with memoization otherwise. Throws RadiusExceeded
  // if g is not reached within the radius cap.
  long word_length(const GroupElem& g) const;
  long word_length_bfs(const GroupElem& g) const;  // always the BFS route
  bool has_closed_form_length() const;

  // {g : word_length(g) <= R}, ordered by (length, payload_less).
  std::vector<GroupElem> ball(long radius) const;

  long bfs_radius_cap() const { return bfs_cap_; }
  void set_bfs_radius_cap(long cap) { bfs_cap_ = cap; }
  long ball_size_cap() const { return ball_cap_; }

  // Map a quotient-group element back to the canonical representative in the
  // parent, and a parent element to its coset element. Quotient kind only.
  GroupElem rep_in_parent(const GroupElem& q) const;
  GroupElem project(const GroupElem& g) const;
  std::shared_ptr<const BaseGroup> parent() const { return parent_; }

 private:
  BaseGroup() = default;

  Kind kind_ = Kind::Integers;
  int rank_ = 0;  // Free
  // Finite:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_table_;
  int id_index_ = 0;
  std::vector<int> gen_indices_;
  std::unordered_map<std::string, int> name_to_index_;
  // Product:
  std::vector<std::shared_ptr<const BaseGroup>> factors_;
  // Quotient bookkeeping (Finite kind):
  std::shared_ptr<const BaseGroup> parent_;
  std::vector<GroupElem> coset_reps_;
  std::unordered_map<std::string, int> parent_key_to_coset_;

  std::vector<GroupElem> gens_;
  long bfs_cap_ = 12;
  long ball_cap_ = 5000000;

  mutable std::mutex memo_mu_;
  mutable std::unordered_map<std::string, long> bfs_len_;
  mutable long bfs_done_radius_ = -1;
  mutable bool bfs_closed_ = false;  // BFS saturated (finite reach)

  void bfs_extend(long radius) const;
  void validate_finite() const;
};

// Checks the length-function axioms (zero exactly at identity, symmetry under
// inversion, subadditivity) on the given sample pairs, using the provided
// length. A null length means the group's own word_length.
LengthAxiomReport verify_length_axioms(const BaseGroup& g,
                                       const std::vector<std::pair<GroupElem, GroupElem>>& sample,
                                       const std::function<long(const GroupElem&)>& length = {});

}  // namespace hscomp
