#include "hscomp/amalgam.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace hscomp {

Amalgam::Amalgam(std::shared_ptr<const BaseGroup> g0, std::shared_ptr<const BaseGroup> g1,
                 std::vector<GroupElem> f_in_g0, std::vector<GroupElem> f_in_g1) {
  f_[0] = std::move(g0);
  f_[1] = std::move(g1);
  f_img_[0] = std::move(f_in_g0);
  f_img_[1] = std::move(f_in_g1);
  const size_t m = f_img_[0].size();
  if (m == 0 || f_img_[1].size() != m)
    throw ConfigError("inconsistent F-embeddings: size mismatch");
  for (int c : {0, 1}) {
    if (!f_[c]->is_identity(f_img_[c][0]))
      throw ConfigError("inconsistent F-embeddings: index 0 must be the identity");
    for (const auto& x : f_img_[c])
      if (!f_[c]->valid(x)) throw ConfigError("inconsistent F-embeddings: element outside factor");
  }
  // derive the abstract multiplication from image 0 and check against image 1
  auto index_in = [&](int c, const GroupElem& x) {
    for (size_t i = 0; i < m; ++i)
      if (f_img_[c][i] == x) return static_cast<int>(i);
    return -1;
  };
  f_table_.assign(m, std::vector<int>(m, -1));
  f_inv_.assign(m, -1);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      int k0 = index_in(0, f_[0]->mul(f_img_[0][i], f_img_[0][j]));
      int k1 = index_in(1, f_[1]->mul(f_img_[1][i], f_img_[1][j]));
      if (k0 < 0 || k1 < 0) throw ConfigError("inconsistent F-embeddings: images not subgroups");
      if (k0 != k1) throw ConfigError("inconsistent F-embeddings: images disagree on F");
      f_table_[i][j] = k0;
      if (k0 == 0) f_inv_[i] = static_cast<int>(j);
    }
  }
  for (int v : f_inv_)
    if (v < 0) throw ConfigError("inconsistent F-embeddings: missing inverses");
}

Amalgam Amalgam::free_product_of(std::shared_ptr<const BaseGroup> g0,
                                 std::shared_ptr<const BaseGroup> g1) {
  std::vector<GroupElem> t0 = {g0->identity()};
  std::vector<GroupElem> t1 = {g1->identity()};
  return Amalgam(std::move(g0), std::move(g1), std::move(t0), std::move(t1));
}

GroupElem Amalgam::f_mul_img(int c, int fa, int fb) const { return f_img_[c][f_table_[fa][fb]]; }

int Amalgam::f_inv_idx(int fa) const { return f_inv_[fa]; }

int Amalgam::f_index_of(int c, const GroupElem& g) const {
  for (size_t i = 0; i < f_img_[c].size(); ++i)
    if (f_img_[c][i] == g) return static_cast<int>(i);
  return -1;
}

GroupElem Amalgam::coset_rep(int c, const GroupElem& g) const {
  GroupElem best = f_[c]->mul(g, f_img_[c][0]);
  long best_len = f_[c]->word_length(best);
  for (size_t i = 1; i < f_img_[c].size(); ++i) {
    GroupElem cand = f_[c]->mul(g, f_img_[c][i]);
    long l = f_[c]->word_length(cand);
    if (l < best_len || (l == best_len && payload_less(cand, best))) {
      best = cand;
      best_len = l;
    }
  }
  return best;
}

Amalgam::NormalForm Amalgam::normalize(const std::vector<FactorLetter>& letters) const {
  NormalForm out;
  for (const auto& l : letters) {
    if (l.factor != 0 && l.factor != 1) throw ConfigError("bad letter: unknown factor");
    if (!f_[l.factor]->valid(l.g)) throw ConfigError("bad letter: element not in factor");
    int c = l.factor;
    // fold the pending subgroup element into this letter
    GroupElem h = f_[c]->mul(f_img_[c][out.f_index], l.g);
    out.f_index = 0;
    while (true) {
      int fi = f_index_of(c, h);
      if (fi >= 0) {
        // letter absorbed into F; it may rejoin the previous block later
        out.f_index = fi;
        break;
      }
      if (!out.blocks.empty() && out.blocks.back().factor == c) {
        h = f_[c]->mul(out.blocks.back().rep, h);
        out.blocks.pop_back();
        continue;
      }
      GroupElem rep = coset_rep(c, h);
      GroupElem fpart = f_[c]->mul(f_[c]->inv(rep), h);
      int fi2 = f_index_of(c, fpart);
      if (fi2 < 0) throw ConfigError("coset decomposition failed");
      out.blocks.push_back({c, rep});
      out.f_index = fi2;
      break;
    }
    // when a letter was absorbed into F and the two surrounding blocks now
    // share a factor, the next incoming letter will trigger the merge; the
    // stored form stays canonical because blocks still alternate
  }
  return out;
}

std::vector<FactorLetter> Amalgam::letters_of(const NormalForm& x) const {
  std::vector<FactorLetter> ls;
  for (const auto& b : x.blocks) ls.push_back({b.factor, b.rep});
  if (x.f_index != 0) ls.push_back({0, f_img_[0][x.f_index]});
  return ls;
}

Amalgam::NormalForm Amalgam::mul(const NormalForm& a, const NormalForm& b) const {
  std::vector<FactorLetter> cat = letters_of(a);
  auto lb = letters_of(b);
  cat.insert(cat.end(), lb.begin(), lb.end());
  return normalize(cat);
}

Amalgam::NormalForm Amalgam::inv(const NormalForm& a) const {
  std::vector<FactorLetter> ls;
  if (a.f_index != 0) ls.push_back({0, f_img_[0][f_inv_idx(a.f_index)]});
  for (auto it = a.blocks.rbegin(); it != a.blocks.rend(); ++it)
    ls.push_back({it->factor, f_[it->factor]->inv(it->rep)});
  return normalize(ls);
}

Amalgam::PairedForm Amalgam::eq_pairs(const NormalForm& x) const {
  PairedForm p;
  p.f_index = x.f_index;
  p.f0 = f_img_[0][x.f_index];
  size_t i = 0;
  while (i < x.blocks.size()) {
    GroupElem a = f_[0]->identity();
    GroupElem b = f_[1]->identity();
    if (x.blocks[i].factor == 0) {
      a = x.blocks[i].rep;
      ++i;
      if (i < x.blocks.size() && x.blocks[i].factor == 1) {
        b = x.blocks[i].rep;
        ++i;
      }
    } else {
      b = x.blocks[i].rep;
      ++i;
    }
    p.pairs.emplace_back(std::move(a), std::move(b));
  }
  return p;
}

std::string Amalgam::key(const NormalForm& x) const {
  std::string s;
  for (const auto& b : x.blocks) {
    s += std::to_string(b.factor + 1) + ":" + f_[b.factor]->key(b.rep) + ".";
  }
  s += "f" + std::to_string(x.f_index);
  return s;
}

Amalgam::NormalForm Amalgam::parse(const std::string& s) const {
  std::vector<FactorLetter> letters;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t dot = s.find('.', pos);
    std::string tok = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (tok.size() >= 1 && tok[0] == 'f' && tok.find(':') == std::string::npos) {
      int fi = std::stoi(tok.substr(1));
      if (fi < 0 || fi >= static_cast<int>(f_img_[0].size()))
        throw ConfigError("bad subgroup index in: " + s);
      if (fi != 0) letters.push_back({0, f_img_[0][fi]});
    } else {
      size_t colon = tok.find(':');
      if (colon == std::string::npos) throw ConfigError("bad amalgam word: " + s);
      int factor = std::stoi(tok.substr(0, colon)) - 1;
      if (factor != 0 && factor != 1) throw ConfigError("bad letter: unknown factor");
      letters.push_back({factor, f_[factor]->parse(tok.substr(colon + 1))});
    }
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return normalize(letters);
}

std::vector<Amalgam::NormalForm> Amalgam::generators() const {
  std::vector<NormalForm> gens;
  for (int c : {0, 1})
    for (const auto& s : f_[c]->generators()) gens.push_back(normalize({{c, s}}));
  // distinct images only (an amalgamated generator may coincide across factors)
  std::vector<NormalForm> out;
  for (auto& g : gens) {
    if (is_identity(g)) continue;
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  }
  return out;
}

std::unordered_map<std::string, long> Amalgam::bfs_length_table(long radius) const {
  std::unordered_map<std::string, long> len;
  auto gens = generators();
  std::deque<NormalForm> frontier;
  len[key(identity())] = 0;
  frontier.push_back(identity());
  long r = 0;
  while (r < radius && !frontier.empty()) {
    std::deque<NormalForm> next;
    for (const auto& w : frontier) {
      for (const auto& s : gens) {
        NormalForm y = mul(w, s);
        if (len.emplace(key(y), r + 1).second) next.push_back(std::move(y));
      }
      if (static_cast<long>(len.size()) > ball_cap_) throw BallTooLarge("ball too large");
    }
    ++r;
    frontier = std::move(next);
  }
  return len;
}

long Amalgam::length(const NormalForm& x) const {
  std::string k = key(x);
  std::lock_guard<std::mutex> lock(memo_mu_);
  if (len_radius_ < cap_) {
    len_ = bfs_length_table(cap_);
    len_radius_ = cap_;
  }
  auto it = len_.find(k);
  if (it == len_.end()) throw RadiusExceeded("radius exceeded: element beyond amalgam BFS cap");
  return it->second;
}

std::vector<Amalgam::NormalForm> Amalgam::ball(long radius) const {
  auto table = bfs_length_table(radius);
  std::vector<std::pair<std::string, long>> items(table.begin(), table.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<NormalForm> out;
  out.reserve(items.size());
  for (const auto& [k, l] : items) out.push_back(parse(k));
  return out;
}

long Amalgam::shortest_blocklength(const NormalForm& x) const {
  PairedForm p = eq_pairs(x);
  const int m = static_cast<int>(f_img_[0].size());
  const long INF = std::numeric_limits<long>::max() / 4;
  // blocks in order: alpha_1, beta_1, ..., alpha_k, beta_k; correction
  // c_j in F sits between block j and block j+1; the terminal subgroup
  // element folds into the last block.
  std::vector<GroupElem> blocks;
  std::vector<int> factors;
  for (const auto& [a, b] : p.pairs) {
    blocks.push_back(a);
    factors.push_back(0);
    blocks.push_back(b);
    factors.push_back(1);
  }
  if (blocks.empty()) {
    if (p.f_index == 0) return 0;
    return std::min(f_[0]->word_length(f_img_[0][p.f_index]),
                    f_[1]->word_length(f_img_[1][p.f_index]));
  }
  // fold terminal f into the last block
  blocks.back() = f_[factors.back()]->mul(blocks.back(), f_img_[factors.back()][p.f_index]);

  std::vector<long> cost(m, INF);
  // first block: alpha_1 * c_1
  for (int c = 0; c < m; ++c) {
    GroupElem v = f_[factors[0]]->mul(blocks[0], f_img_[factors[0]][c]);
    cost[c] = f_[factors[0]]->word_length(v);
  }
  for (size_t j = 1; j < blocks.size(); ++j) {
    std::vector<long> next(m, INF);
    int cf = factors[j];
    bool last = j + 1 == blocks.size();
    for (int cin = 0; cin < m; ++cin) {
      if (cost[cin] >= INF) continue;
      GroupElem left = f_[cf]->mul(f_img_[cf][f_inv_idx(cin)], blocks[j]);
      if (last) {
        long w = cost[cin] + f_[cf]->word_length(left);
        next[0] = std::min(next[0], w);
      } else {
        for (int cout = 0; cout < m; ++cout) {
          GroupElem v = f_[cf]->mul(left, f_img_[cf][cout]);
          long w = cost[cin] + f_[cf]->word_length(v);
          next[cout] = std::min(next[cout], w);
        }
      }
    }
    cost = std::move(next);
  }
  return *std::min_element(cost.begin(), cost.end());
}

}  // namespace hscomp
