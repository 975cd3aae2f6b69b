#include "hscomp/free_product.hpp"

#include <algorithm>
#include <deque>

namespace hscomp {

FreeProduct::FreeProduct(std::shared_ptr<const BaseGroup> g0, std::shared_ptr<const BaseGroup> g1) {
  f_[0] = std::move(g0);
  f_[1] = std::move(g1);
}

FreeProductWord FreeProduct::reduce(const std::vector<FactorLetter>& letters) const {
  FreeProductWord out;
  for (const auto& l : letters) {
    if (l.factor != 0 && l.factor != 1) throw ConfigError("bad letter: unknown factor");
    if (!f_[l.factor]->valid(l.g)) throw ConfigError("bad letter: element not in factor");
    if (f_[l.factor]->is_identity(l.g)) continue;
    if (!out.letters.empty() && out.letters.back().factor == l.factor) {
      GroupElem m = f_[l.factor]->mul(out.letters.back().g, l.g);
      out.letters.pop_back();
      if (!f_[l.factor]->is_identity(m)) out.letters.push_back({l.factor, m});
      // a merge that vanished can expose a new same-factor adjacency only at
      // the seam we are about to extend, so the single pass stays a fixpoint
    } else {
      out.letters.push_back({l.factor, l.g});
    }
  }
  return out;
}

FreeProductWord FreeProduct::mul(const FreeProductWord& a, const FreeProductWord& b) const {
  std::vector<FactorLetter> cat = a.letters;
  cat.insert(cat.end(), b.letters.begin(), b.letters.end());
  return reduce(cat);
}

FreeProductWord FreeProduct::inv(const FreeProductWord& a) const {
  FreeProductWord r;
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
    r.letters.push_back({it->factor, f_[it->factor]->inv(it->g)});
  return r;
}

CommonPart FreeProduct::common_part(const FreeProductWord& x, const FreeProductWord& y) const {
  CommonPart cp;
  size_t i = 0;
  while (i < x.letters.size() && i < y.letters.size() && x.letters[i] == y.letters[i]) ++i;
  cp.h.letters.assign(x.letters.begin(), x.letters.begin() + i);
  std::vector<FactorLetter> rx(x.letters.begin() + i, x.letters.end());
  std::vector<FactorLetter> ry(y.letters.begin() + i, y.letters.end());
  int c;
  if (!rx.empty())
    c = rx.front().factor;
  else if (!ry.empty())
    c = ry.front().factor;
  else
    c = 0;
  cp.factor = c;
  if (!rx.empty() && rx.front().factor == c) {
    cp.gx = rx.front().g;
    rx.erase(rx.begin());
  } else {
    cp.gx = f_[c]->identity();
  }
  if (!ry.empty() && ry.front().factor == c) {
    cp.gy = ry.front().g;
    ry.erase(ry.begin());
  } else {
    cp.gy = f_[c]->identity();
  }
  cp.tail_x = std::move(rx);
  cp.tail_y = std::move(ry);
  return cp;
}

long FreeProduct::fp_distance(const FreeProductWord& x, const FreeProductWord& y) const {
  CommonPart cp = common_part(x, y);
  long d = f_[cp.factor]->word_length(f_[cp.factor]->mul(f_[cp.factor]->inv(cp.gx), cp.gy));
  for (const auto& l : cp.tail_x) d += f_[l.factor]->word_length(l.g);
  for (const auto& l : cp.tail_y) d += f_[l.factor]->word_length(l.g);
  return d;
}

long FreeProduct::length(const FreeProductWord& x) const {
  long d = 0;
  for (const auto& l : x.letters) d += f_[l.factor]->word_length(l.g);
  return d;
}

std::string FreeProduct::key(const FreeProductWord& w) const {
  if (w.letters.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(w.letters[i].factor + 1) + ":" + f_[w.letters[i].factor]->key(w.letters[i].g);
  }
  return s;
}

FreeProductWord FreeProduct::parse(const std::string& s) const {
  if (s == "e") return {};
  std::vector<FactorLetter> letters;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t dot = s.find('.', pos);
    std::string tok = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    size_t colon = tok.find(':');
    if (colon == std::string::npos) throw ConfigError("bad free-product word: " + s);
    int factor = std::stoi(tok.substr(0, colon)) - 1;
    if (factor != 0 && factor != 1) throw ConfigError("bad letter: unknown factor");
    letters.push_back({factor, f_[factor]->parse(tok.substr(colon + 1))});
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return reduce(letters);
}

std::vector<FreeProductWord> FreeProduct::generators() const {
  std::vector<FreeProductWord> gens;
  for (int c : {0, 1})
    for (const auto& s : f_[c]->generators()) gens.push_back(FreeProductWord{{{c, s}}});
  return gens;
}

std::vector<FreeProductWord> FreeProduct::ball(long radius) const {
  auto table = bfs_length_table(radius);
  std::vector<std::pair<std::string, long>> items(table.begin(), table.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<FreeProductWord> out;
  out.reserve(items.size());
  for (const auto& [k, l] : items) out.push_back(parse(k));
  return out;
}

std::unordered_map<std::string, long> FreeProduct::bfs_length_table(long radius) const {
  std::unordered_map<std::string, long> len;
  auto gens = generators();
  std::deque<FreeProductWord> frontier;
  len[key(identity())] = 0;
  frontier.push_back(identity());
  long r = 0;
  while (r < radius && !frontier.empty()) {
    std::deque<FreeProductWord> next;
    for (const auto& w : frontier) {
      for (const auto& s : gens) {
        FreeProductWord y = mul(w, s);
        if (len.emplace(key(y), r + 1).second) next.push_back(std::move(y));
      }
      if (static_cast<long>(len.size()) > ball_cap_) throw BallTooLarge("ball too large");
    }
    ++r;
    frontier = std::move(next);
  }
  return len;
}

}  // namespace hscomp
