#pragma once

#include "hscomp/group.hpp"

namespace hscomp {

// Letter of a free-product word: a nonidentity element of factor 0 or 1.
struct FactorLetter {
  int factor = 0;
  GroupElem g;
  bool operator==(const FactorLetter&) const = default;
};

// Reduced alternating word: no two consecutive letters share a factor, no
// letter is a factor identity.
struct FreeProductWord {
  std::vector<FactorLetter> letters;
  bool operator==(const FreeProductWord&) const = default;
};

// Decomposition of a pair (x, y) as x = h gx tail_x, y = h gy tail_y with h
// the longest common letter prefix and gx, gy in the same factor (one of
// them the identity when the next letters disagree on factor or are absent).
struct CommonPart {
  FreeProductWord h;
  int factor = 0;
  GroupElem gx, gy;
  std::vector<FactorLetter> tail_x, tail_y;
};

class FreeProduct {
 public:
  FreeProduct(std::shared_ptr<const BaseGroup> g0, std::shared_ptr<const BaseGroup> g1);

  const std::shared_ptr<const BaseGroup>& factor(int i) const { return f_[i]; }

  // Merges adjacent same-factor letters, drops identities, iterates to a
  // fixpoint. Throws ConfigError("bad letter") on a letter outside the two
  // factors.
  FreeProductWord reduce(const std::vector<FactorLetter>& letters) const;

  FreeProductWord identity() const { return {}; }
  bool is_identity(const FreeProductWord& w) const { return w.letters.empty(); }
  FreeProductWord mul(const FreeProductWord& a, const FreeProductWord& b) const;
  FreeProductWord inv(const FreeProductWord& a) const;

  CommonPart common_part(const FreeProductWord& x, const FreeProductWord& y) const;

  // Word metric over S_0 u S_1 via the common-part decomposition.
  long fp_distance(const FreeProductWord& x, const FreeProductWord& y) const;
  long length(const FreeProductWord& x) const;  // = fp_distance(e, x)

  std::string key(const FreeProductWord& w) const;
  FreeProductWord parse(const std::string& s) const;

  std::vector<FreeProductWord> generators() const;
  // Ordered by (length, key shortlex).
  std::vector<FreeProductWord> ball(long radius) const;

  // Independent metric oracle: BFS distance table from the identity over
  // S_0 u S_1, up to the given radius. Keys are canonical word keys.
  std::unordered_map<std::string, long> bfs_length_table(long radius) const;

 private:
  std::shared_ptr<const BaseGroup> f_[2];
  long ball_cap_ = 5000000;
};

}  // namespace hscomp
