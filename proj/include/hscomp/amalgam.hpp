#pragma once

#include "hscomp/free_product.hpp"
#include "hscomp/group.hpp"

namespace hscomp {

// Amalgamated free product of two base groups over a finite subgroup F given
// by compatible embeddings into both factors. F is abstract: index 0 is the
// identity and the multiplication tables induced by the two images must
// agree.
class Amalgam {
 public:
  Amalgam(std::shared_ptr<const BaseGroup> g0, std::shared_ptr<const BaseGroup> g1,
          std::vector<GroupElem> f_in_g0, std::vector<GroupElem> f_in_g1);

  // Free product of the factors (F trivial).
  static Amalgam free_product_of(std::shared_ptr<const BaseGroup> g0,
                                 std::shared_ptr<const BaseGroup> g1);

  const std::shared_ptr<const BaseGroup>& factor(int i) const { return f_[i]; }
  int subgroup_order() const { return static_cast<int>(f_img_[0].size()); }
  const std::vector<GroupElem>& subgroup_in(int i) const { return f_img_[i]; }

  struct Block {
    int factor = 0;
    GroupElem rep;  // canonical left-coset representative, never an F-image
    bool operator==(const Block&) const = default;
  };
  // Canonical form: alternating nonidentity coset representatives followed by
  // a subgroup element. The classic strictly-alternating shape (pairs
  // alpha_i beta_i with only the leading alpha or trailing beta allowed to be
  // trivial) is recovered by eq_pairs().
  struct NormalForm {
    std::vector<Block> blocks;
    int f_index = 0;
    bool operator==(const NormalForm&) const = default;
  };

  NormalForm normalize(const std::vector<FactorLetter>& letters) const;
  NormalForm identity() const { return {}; }
  bool is_identity(const NormalForm& x) const { return x.blocks.empty() && x.f_index == 0; }
  NormalForm mul(const NormalForm& a, const NormalForm& b) const;
  NormalForm inv(const NormalForm& a) const;

  // Letters whose product recomposes the element exactly.
  std::vector<FactorLetter> letters_of(const NormalForm& x) const;

  // Strictly alternating view: pairs (alpha_i, beta_i) with alpha in factor 0
  // and beta in factor 1, padded with identities at the ends, plus the
  // terminal subgroup element. pair_count is the block count k.
  struct PairedForm {
    std::vector<std::pair<GroupElem, GroupElem>> pairs;
    GroupElem f0;  // terminal subgroup element as a factor-0 element
    int f_index = 0;
  };
  PairedForm eq_pairs(const NormalForm& x) const;

  // Canonical left-coset representative of g * F_image in factor c: minimal
  // (word length, payload order) element of the coset.
  GroupElem coset_rep(int c, const GroupElem& g) const;
  int f_index_of(int c, const GroupElem& g) const;  // -1 if not an F-image

  std::string key(const NormalForm& x) const;
  NormalForm parse(const std::string& s) const;

  std::vector<NormalForm> generators() const;
  long length(const NormalForm& x) const;  // BFS word length over S_0 u S_1, memoized
  std::vector<NormalForm> ball(long radius) const;
  std::unordered_map<std::string, long> bfs_length_table(long radius) const;

  // Minimal total factor length over words with the normal form's block
  // count, by dynamic programming over the interleaved subgroup corrections.
  long shortest_blocklength(const NormalForm& x) const;

  long radius_cap() const { return cap_; }
  void set_radius_cap(long c) { cap_ = c; }

 private:
  GroupElem f_mul_img(int c, int fa, int fb) const;  // image of F product
  int f_inv_idx(int fa) const;

  std::shared_ptr<const BaseGroup> f_[2];
  std::vector<GroupElem> f_img_[2];
  std::vector<std::vector<int>> f_table_;  // abstract F multiplication
  std::vector<int> f_inv_;
  long cap_ = 12;
  long ball_cap_ = 5000000;
  mutable std::mutex memo_mu_;
  mutable std::unordered_map<std::string, long> len_;
  mutable long len_radius_ = -1;
};

}  // namespace hscomp
