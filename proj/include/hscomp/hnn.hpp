#pragma once

#include <functional>

#include "hscomp/group.hpp"

namespace hscomp {

// HNN extension <H, t | t^-1 f t = theta(f), f in F>. The associated subgroup
// F is given either as an explicit finite list or through membership
// predicates with coset machinery (used for the integer instances where F has
// finite index but is infinite).
class HnnExtension {
 public:
  struct SubgroupSpec {
    std::function<bool(const GroupElem&)> in_f;
    std::function<GroupElem(const GroupElem&)> theta;      // defined on F
    std::function<bool(const GroupElem&)> in_theta_f;
    std::function<GroupElem(const GroupElem&)> theta_inv;  // defined on theta(F)
    // Canonical left-coset representatives h F and h theta(F) in H.
    std::function<GroupElem(const GroupElem&)> rep_f;
    std::function<GroupElem(const GroupElem&)> rep_theta_f;
    long index_f = 1;        // [H : F]
    long index_theta_f = 1;  // [H : theta(F)]
    std::optional<std::vector<GroupElem>> elements;  // when F is finite
  };

  HnnExtension(std::shared_ptr<const BaseGroup> h, SubgroupSpec spec);

  // F finite, listed; theta given by image list aligned with f_elements.
  // Validates that F is a subgroup and theta a monomorphism onto a subgroup.
  static HnnExtension from_lists(std::shared_ptr<const BaseGroup> h,
                                 std::vector<GroupElem> f_elements,
                                 std::vector<GroupElem> theta_images);

  // HNN(Z, Z, k -> m k) = BS(1, m).
  static HnnExtension baumslag_solitar(std::int64_t m);

  const std::shared_ptr<const BaseGroup>& base() const { return h_; }
  const SubgroupSpec& subgroup() const { return spec_; }

  // g = gamma_1 t^{i_1} ... gamma_k t^{i_k} alpha f in the representative
  // normal form: gamma_j a left-coset representative of F (sign +1) or
  // theta(F) (sign -1), alpha a representative of F, f in F, and no pinch
  // t^-1 f t or t theta(f) t^-1 anywhere.
  struct Letter {
    GroupElem gamma;
    int sign = 1;
    bool operator==(const Letter&) const = default;
  };
  struct Britton {
    std::vector<Letter> prefix;
    GroupElem alpha;
    GroupElem f;
    bool operator==(const Britton&) const = default;
  };

  // Input word: H elements interleaved with stable-letter powers.
  struct Piece {
    std::variant<GroupElem, int> v;  // int = +1 or -1
    static Piece elem(GroupElem g) { return Piece{std::move(g)}; }
    static Piece t(int sign) { return Piece{sign}; }
  };

  Britton normalize(const std::vector<Piece>& word) const;
  Britton identity() const;
  bool is_identity(const Britton& g) const;
  Britton mul(const Britton& a, const Britton& b) const;
  Britton inv(const Britton& a) const;
  Britton embed(const GroupElem& h) const;  // H element as a group element
  // H part of an element with empty prefix; throws otherwise.
  GroupElem h_part(const Britton& g) const;
  bool in_base(const Britton& g) const { return g.prefix.empty(); }

  std::vector<Piece> pieces_of(const Britton& g) const;

  std::string key(const Britton& g) const;
  Britton parse(const std::string& s) const;

  std::vector<Britton> generators() const;  // images of S_H plus t, t^-1
  long length(const Britton& g) const;      // BFS over S_H u {t, t^-1}, memoized
  std::vector<Britton> ball(long radius) const;
  std::unordered_map<std::string, long> bfs_length_table(long radius) const;
  long dist(const Britton& a, const Britton& b) const { return length(mul(inv(a), b)); }

  // Strict upper bound for minimal-length right-coset representatives of F
  // and theta(F) in H, lengths measured in the metric of the extension.
  long compute_z() const;
  // The chosen right-coset representative tables behind compute_z.
  struct CosetReps {
    std::vector<Britton> reps_f;
    std::vector<Britton> reps_theta_f;
  };
  CosetReps right_coset_reps() const;

  // --- Bass-Serre tree -----------------------------------------------------
  // Vertex gH, labelled by the normal-form prefix; edge gF joins gH and gtH.
  struct Vertex {
    std::vector<Letter> prefix;
    bool operator==(const Vertex&) const = default;
  };
  Vertex vertex_of(const Britton& g) const { return Vertex{g.prefix}; }
  std::string vertex_key(const Vertex& v) const;
  Britton vertex_rep(const Vertex& v) const;  // sigma(v): the prefix as an element
  long tree_distance(const Vertex& u, const Vertex& v) const;
  // One step toward the ray H, tH, t^2H, ...; on the ray, toward its end.
  Vertex alpha_step(const Vertex& v) const;
  // Minimal (k, l) with alpha^k(u) = alpha^l(v); tree_distance(u,v) == k+l.
  std::pair<long, long> meet_under_flow(const Vertex& u, const Vertex& v) const;

  // Points of the edge space between v and alpha(v), viewed inside X_v, and
  // the structural crossing map to X_alpha(v). Requires F finite when the
  // edge set must be enumerated.
  std::vector<Britton> edge_points(const Vertex& v) const;
  Britton cross_edge(const Vertex& v, const Britton& y) const;

  // d(x, y) decomposed along the tree: d_T(xH, yH) plus the minimal total
  // intra-coset travel over all stable-letter hop sequences. Equals length()
  // on every element (verified exhaustively in tests).
  long length_via_tree(const Britton& g) const;

  // Minimal total base length over words h_1 t^{i_1} ... h_k t^{i_k} h_{k+1}
  // matching the normal form's block structure (finite F only).
  long shortest_blocklength(const Britton& g) const;
  long block_count(const Britton& g) const {
    return static_cast<long>(g.prefix.size()) + 1;
  }

  long radius_cap() const { return cap_; }
  void set_radius_cap(long c) { cap_ = c; }

 private:
  void ensure_length_table(long radius) const;
  const std::vector<std::pair<GroupElem, long>>& base_moves(long radius) const;

  std::shared_ptr<const BaseGroup> h_;
  SubgroupSpec spec_;
  long cap_ = 12;
  long ball_cap_ = 5000000;
  mutable std::mutex memo_mu_;
  mutable std::unordered_map<std::string, long> len_;
  mutable long len_radius_ = -1;
  mutable bool len_closed_ = false;
  mutable std::mutex moves_mu_;
  mutable std::vector<std::pair<GroupElem, long>> moves_;
  mutable long moves_radius_ = -1;
};

}  // namespace hscomp
