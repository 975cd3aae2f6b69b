#include "hscomp/group.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <deque>
#include <set>

namespace hscomp {

namespace {

int letter_rank(std::int32_t s) {
  // +1 < -1 < +2 < -2 < ...
  int g = std::abs(s);
  return 2 * (g - 1) + (s < 0 ? 1 : 0);
}

}  // namespace

bool payload_less(const GroupElem& a, const GroupElem& b) {
  if (a.payload.index() != b.payload.index()) return a.payload.index() < b.payload.index();
  if (auto* ia = std::get_if<GroupElem::IntPayload>(&a.payload)) {
    auto nb = std::get<GroupElem::IntPayload>(b.payload).n;
    auto na = ia->n;
    auto ka = std::llabs(na), kb = std::llabs(nb);
    if (ka != kb) return ka < kb;
    return na > nb;  // positive first
  }
  if (auto* fa = std::get_if<GroupElem::FiniteIdx>(&a.payload)) {
    return fa->i < std::get<GroupElem::FiniteIdx>(b.payload).i;
  }
  if (auto* wa = std::get_if<GroupElem::FreeWord>(&a.payload)) {
    const auto& wb = std::get<GroupElem::FreeWord>(b.payload);
    if (wa->size() != wb.size()) return wa->size() < wb.size();
    for (size_t i = 0; i < wa->size(); ++i) {
      if ((*wa)[i] != wb[i]) return letter_rank((*wa)[i]) < letter_rank(wb[i]);
    }
    return false;
  }
  const auto& pa = std::get<GroupElem::Parts>(a.payload);
  const auto& pb = std::get<GroupElem::Parts>(b.payload);
  for (size_t i = 0; i < std::min(pa.size(), pb.size()); ++i) {
    if (!(pa[i] == pb[i])) return payload_less(pa[i], pb[i]);
  }
  return pa.size() < pb.size();
}

// ---------------------------------------------------------------------------
// construction

std::shared_ptr<const BaseGroup> BaseGroup::integers() {
  auto g = std::shared_ptr<BaseGroup>(new BaseGroup());
  g->kind_ = Kind::Integers;
  g->gens_ = {GroupElem::integer(1), GroupElem::integer(-1)};
  return g;
}

std::shared_ptr<const BaseGroup> BaseGroup::free_group(int rank) {
  if (rank < 1 || rank > 26) throw ConfigError("free group rank must be in [1, 26]");
  auto g = std::shared_ptr<BaseGroup>(new BaseGroup());
  g->kind_ = Kind::Free;
  g->rank_ = rank;
  for (int i = 1; i <= rank; ++i) {
    g->gens_.push_back(GroupElem::word({i}));
    g->gens_.push_back(GroupElem::word({-i}));
  }
  return g;
}

void BaseGroup::validate_finite() const {
  const int n = static_cast<int>(names_.size());
  if (n == 0) throw ConfigError("finite group needs at least the identity");
  if (static_cast<int>(table_.size()) != n) throw ConfigError("table row count mismatch");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw ConfigError("table column count mismatch");
    for (int v : row)
      if (v < 0 || v >= n) throw ConfigError("table entry out of range");
  }
  // Latin square
  for (int i = 0; i < n; ++i) {
    std::set<int> row(table_[i].begin(), table_[i].end());
    if (static_cast<int>(row.size()) != n) throw ConfigError("table row is not a permutation");
    std::set<int> col;
    for (int j = 0; j < n; ++j) col.insert(table_[j][i]);
    if (static_cast<int>(col.size()) != n) throw ConfigError("table column is not a permutation");
  }
  // two-sided identity
  int id = -1;
  for (int i = 0; i < n; ++i) {
    bool ok = true;
    for (int j = 0; j < n; ++j) ok = ok && table_[i][j] == j && table_[j][i] == j;
    if (ok) {
      id = i;
      break;
    }
  }
  if (id < 0) throw ConfigError("table has no two-sided identity");
  if (id != id_index_) throw ConfigError("identity index mismatch");
  // two-sided inverses
  for (int i = 0; i < n; ++i) {
    int r = -1;
    for (int j = 0; j < n; ++j)
      if (table_[i][j] == id && table_[j][i] == id) r = j;
    if (r < 0) throw ConfigError("element without two-sided inverse");
  }
  // generating set: symmetric, no identity
  for (int gi : gen_indices_) {
    if (gi == id) throw ConfigError("identity listed as generator");
    if (std::find(gen_indices_.begin(), gen_indices_.end(), inv_table_[gi]) == gen_indices_.end())
      throw ConfigError("generating set not symmetric");
  }
  if (gen_indices_.empty() && n > 1) throw ConfigError("empty generating set");
}

std::shared_ptr<const BaseGroup> BaseGroup::finite(std::vector<std::string> names,
                                                   std::vector<std::vector<int>> table,
                                                   std::vector<int> generator_indices) {
  auto g = std::shared_ptr<BaseGroup>(new BaseGroup());
  g->kind_ = Kind::Finite;
  g->names_ = std::move(names);
  g->table_ = std::move(table);
  g->gen_indices_ = std::move(generator_indices);
  const int n = static_cast<int>(g->names_.size());
  // locate identity before full validation so validate_finite can confirm it
  g->id_index_ = -1;
  for (int i = 0; i < n; ++i) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = g->table_[i][j] == j && g->table_[j][i] == j;
    if (ok) {
      g->id_index_ = i;
      break;
    }
  }
  if (g->id_index_ < 0) throw ConfigError("table has no two-sided identity");
  g->inv_table_.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g->table_[i][j] == g->id_index_ && g->table_[j][i] == g->id_index_) g->inv_table_[i] = j;
  g->validate_finite();
  for (int i = 0; i < n; ++i) {
    const std::string& nm = g->names_[i];
    if (nm.empty() || nm.find_first_of(".:|, \t\n") != std::string::npos)
      throw ConfigError("element name contains reserved characters: " + nm);
    if (!g->name_to_index_.emplace(nm, i).second)
      throw ConfigError("duplicate element name: " + nm);
  }
  for (int gi : g->gen_indices_) g->gens_.push_back(GroupElem::finite(gi));
  return g;
}

std::shared_ptr<const BaseGroup> BaseGroup::cyclic(int n, const std::string& letter) {
  if (n < 1) throw ConfigError("cyclic order must be positive");
  std::vector<std::string> names;
  names.push_back("e");
  for (int i = 1; i < n; ++i) names.push_back(i == 1 ? letter : letter + std::to_string(i));
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  std::vector<int> gens;
  if (n == 2) {
    gens = {1};
  } else if (n > 1) {
    gens = {1, n - 1};
  }
  return finite(std::move(names), std::move(table), std::move(gens));
}

std::shared_ptr<const BaseGroup> BaseGroup::product(std::shared_ptr<const BaseGroup> a,
                                                    std::shared_ptr<const BaseGroup> b) {
  auto g = std::shared_ptr<BaseGroup>(new BaseGroup());
  g->kind_ = Kind::Product;
  g->factors_ = {std::move(a), std::move(b)};
  for (size_t f = 0; f < g->factors_.size(); ++f) {
    for (const auto& s : g->factors_[f]->generators()) {
      GroupElem::Parts parts;
      for (size_t k = 0; k < g->factors_.size(); ++k)
        parts.push_back(k == f ? s : g->factors_[k]->identity());
      g->gens_.push_back(GroupElem::tuple(std::move(parts)));
    }
  }
  return g;
}

bool BaseGroup::finite_universe() const {
  switch (kind_) {
    case Kind::Finite:
      return true;
    case Kind::Product:
      for (const auto& f : factors_)
        if (!f->finite_universe()) return false;
      return true;
    default:
      return false;
  }
}

std::shared_ptr<const BaseGroup> BaseGroup::quotient(std::shared_ptr<const BaseGroup> g,
                                                     const std::vector<GroupElem>& normal_subgroup) {
  if (!g->finite_universe()) throw ConfigError("quotient supported for finite groups only");
  // enumerate the whole group
  std::vector<GroupElem> all = g->ball(1000000);
  // subgroup checks
  auto in_f = [&](const GroupElem& x) {
    return std::find(normal_subgroup.begin(), normal_subgroup.end(), x) != normal_subgroup.end();
  };
  if (!in_f(g->identity())) throw ConfigError("subgroup must contain the identity");
  for (const auto& x : normal_subgroup) {
    if (!in_f(g->inv(x))) throw ConfigError("subgroup not closed under inverse");
    for (const auto& y : normal_subgroup)
      if (!in_f(g->mul(x, y))) throw ConfigError("subgroup not closed under multiplication");
  }
  for (const auto& h : all)
    for (const auto& f : normal_subgroup)
      if (!in_f(g->mul(g->mul(h, f), g->inv(h)))) throw ConfigError("subgroup is not normal");

  // cosets with canonical minimal representatives (ball order = minimal first)
  std::vector<GroupElem> reps;
  std::unordered_map<std::string, int> coset_of;
  for (const auto& h : all) {
    if (coset_of.count(g->key(h))) continue;
    int idx = static_cast<int>(reps.size());
    reps.push_back(h);
    for (const auto& f : normal_subgroup) coset_of[g->key(g->mul(h, f))] = idx;
  }
  const int m = static_cast<int>(reps.size());
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) table[i][j] = coset_of.at(g->key(g->mul(reps[i], reps[j])));
  std::vector<std::string> names;
  for (size_t i = 0; i < reps.size(); ++i)
    names.push_back(i == 0 ? std::string("e") : "q" + std::to_string(i));
  std::vector<int> gens;
  std::set<int> seen;
  for (const auto& s : g->generators()) {
    int c = coset_of.at(g->key(s));
    bool is_id = c == coset_of.at(g->key(g->identity()));
    if (!is_id && seen.insert(c).second) gens.push_back(c);
  }
  // symmetrize (projection of a symmetric set is symmetric, but dedupe order
  // may drop an inverse partner only if already present, so this is a no-op
  // check)
  auto q = finite(std::move(names), std::move(table), std::move(gens));
  auto qm = std::const_pointer_cast<BaseGroup>(q);
  qm->parent_ = g;
  qm->coset_reps_ = reps;
  for (const auto& [k, v] : coset_of) qm->parent_key_to_coset_[k] = v;
  return q;
}

GroupElem BaseGroup::rep_in_parent(const GroupElem& q) const {
  if (!parent_) throw ConfigError("not a quotient group");
  return coset_reps_.at(static_cast<size_t>(std::get<GroupElem::FiniteIdx>(q.payload).i));
}

GroupElem BaseGroup::project(const GroupElem& g) const {
  if (!parent_) throw ConfigError("not a quotient group");
  return GroupElem::finite(parent_key_to_coset_.at(parent_->key(g)));
}

int BaseGroup::finite_order() const {
  if (kind_ != Kind::Finite) throw ConfigError("finite_order on non-finite group");
  return static_cast<int>(names_.size());
}

// ---------------------------------------------------------------------------
// arithmetic

GroupElem BaseGroup::identity() const {
  switch (kind_) {
    case Kind::Integers: return GroupElem::integer(0);
    case Kind::Finite: return GroupElem::finite(id_index_);
    case Kind::Free: return GroupElem::word({});
    case Kind::Product: {
      GroupElem::Parts p;
      for (const auto& f : factors_) p.push_back(f->identity());
      return GroupElem::tuple(std::move(p));
    }
  }
  throw ConfigError("bad kind");
}

bool BaseGroup::is_identity(const GroupElem& g) const { return g == identity(); }

bool BaseGroup::valid(const GroupElem& g) const {
  switch (kind_) {
    case Kind::Integers: return std::holds_alternative<GroupElem::IntPayload>(g.payload);
    case Kind::Finite: {
      auto* f = std::get_if<GroupElem::FiniteIdx>(&g.payload);
      return f && f->i >= 0 && f->i < static_cast<int>(names_.size());
    }
    case Kind::Free: {
      auto* w = std::get_if<GroupElem::FreeWord>(&g.payload);
      if (!w) return false;
      for (size_t i = 0; i < w->size(); ++i) {
        if ((*w)[i] == 0 || std::abs((*w)[i]) > rank_) return false;
        if (i + 1 < w->size() && (*w)[i] == -(*w)[i + 1]) return false;
      }
      return true;
    }
    case Kind::Product: {
      auto* p = std::get_if<GroupElem::Parts>(&g.payload);
      if (!p || p->size() != factors_.size()) return false;
      for (size_t i = 0; i < p->size(); ++i)
        if (!factors_[i]->valid((*p)[i])) return false;
      return true;
    }
  }
  return false;
}

GroupElem BaseGroup::mul(const GroupElem& a, const GroupElem& b) const {
  switch (kind_) {
    case Kind::Integers:
      return GroupElem::integer(std::get<GroupElem::IntPayload>(a.payload).n +
                                std::get<GroupElem::IntPayload>(b.payload).n);
    case Kind::Finite:
      return GroupElem::finite(table_[std::get<GroupElem::FiniteIdx>(a.payload).i]
                                     [std::get<GroupElem::FiniteIdx>(b.payload).i]);
    case Kind::Free: {
      GroupElem::FreeWord w = std::get<GroupElem::FreeWord>(a.payload);
      for (std::int32_t s : std::get<GroupElem::FreeWord>(b.payload)) {
        if (!w.empty() && w.back() == -s)
          w.pop_back();
        else
          w.push_back(s);
      }
      return GroupElem::word(std::move(w));
    }
    case Kind::Product: {
      const auto& pa = std::get<GroupElem::Parts>(a.payload);
      const auto& pb = std::get<GroupElem::Parts>(b.payload);
      GroupElem::Parts p;
      for (size_t i = 0; i < factors_.size(); ++i) p.push_back(factors_[i]->mul(pa[i], pb[i]));
      return GroupElem::tuple(std::move(p));
    }
  }
  throw ConfigError("bad kind");
}

GroupElem BaseGroup::inv(const GroupElem& a) const {
  switch (kind_) {
    case Kind::Integers:
      return GroupElem::integer(-std::get<GroupElem::IntPayload>(a.payload).n);
    case Kind::Finite:
      return GroupElem::finite(inv_table_[std::get<GroupElem::FiniteIdx>(a.payload).i]);
    case Kind::Free: {
      const auto& w = std::get<GroupElem::FreeWord>(a.payload);
      GroupElem::FreeWord r(w.rbegin(), w.rend());
      for (auto& s : r) s = -s;
      return GroupElem::word(std::move(r));
    }
    case Kind::Product: {
      const auto& pa = std::get<GroupElem::Parts>(a.payload);
      GroupElem::Parts p;
      for (size_t i = 0; i < factors_.size(); ++i) p.push_back(factors_[i]->inv(pa[i]));
      return GroupElem::tuple(std::move(p));
    }
  }
  throw ConfigError("bad kind");
}

// ---------------------------------------------------------------------------
// serialization

std::string BaseGroup::key(const GroupElem& g) const {
  switch (kind_) {
    case Kind::Integers:
      return std::to_string(std::get<GroupElem::IntPayload>(g.payload).n);
    case Kind::Finite:
      return names_[std::get<GroupElem::FiniteIdx>(g.payload).i];
    case Kind::Free: {
      const auto& w = std::get<GroupElem::FreeWord>(g.payload);
      if (w.empty()) return "e";
      std::string s;
      for (std::int32_t l : w) {
        char c = static_cast<char>('a' + std::abs(l) - 1);
        s.push_back(l > 0 ? c : static_cast<char>(c - 'a' + 'A'));
      }
      return s;
    }
    case Kind::Product: {
      const auto& p = std::get<GroupElem::Parts>(g.payload);
      std::string s = "(";
      for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += factors_[i]->key(p[i]);
      }
      s += ")";
      return s;
    }
  }
  throw ConfigError("bad kind");
}

GroupElem BaseGroup::parse(const std::string& s) const {
  switch (kind_) {
    case Kind::Integers: {
      std::int64_t n = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
      if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError("bad integer element: " + s);
      return GroupElem::integer(n);
    }
    case Kind::Finite: {
      auto it = name_to_index_.find(s);
      if (it == name_to_index_.end()) throw ConfigError("unknown element name: " + s);
      return GroupElem::finite(it->second);
    }
    case Kind::Free: {
      if (s == "e") return GroupElem::word({});
      GroupElem::FreeWord w;
      for (char c : s) {
        std::int32_t l;
        if (c >= 'a' && c < 'a' + rank_)
          l = c - 'a' + 1;
        else if (c >= 'A' && c < 'A' + rank_)
          l = -(c - 'A' + 1);
        else
          throw ConfigError("bad free-group letter in: " + s);
        if (!w.empty() && w.back() == -l)
          w.pop_back();
        else
          w.push_back(l);
      }
      return GroupElem::word(std::move(w));
    }
    case Kind::Product: {
      if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ConfigError("bad product element: " + s);
      std::vector<std::string> parts;
      int depth = 0;
      std::string cur;
      for (size_t i = 1; i + 1 < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
          parts.push_back(cur);
          cur.clear();
        } else {
          cur.push_back(c);
        }
      }
      parts.push_back(cur);
      if (parts.size() != factors_.size()) throw ConfigError("bad product arity in: " + s);
      GroupElem::Parts p;
      for (size_t i = 0; i < parts.size(); ++i) p.push_back(factors_[i]->parse(parts[i]));
      return GroupElem::tuple(std::move(p));
    }
  }
  throw ConfigError("bad kind");
}

// ---------------------------------------------------------------------------
// lengths and balls

bool BaseGroup::has_closed_form_length() const {
  switch (kind_) {
    case Kind::Integers:
    case Kind::Free:
      return true;
    case Kind::Product:
      for (const auto& f : factors_)
        if (!f->has_closed_form_length()) return false;
      return true;
    case Kind::Finite:
      return false;
  }
  return false;
}

long BaseGroup::word_length(const GroupElem& g) const {
  if (!valid(g)) throw ConfigError("element does not belong to this group");
  switch (kind_) {
    case Kind::Integers:
      return static_cast<long>(std::llabs(std::get<GroupElem::IntPayload>(g.payload).n));
    case Kind::Free:
      return static_cast<long>(std::get<GroupElem::FreeWord>(g.payload).size());
    case Kind::Product: {
      const auto& p = std::get<GroupElem::Parts>(g.payload);
      long s = 0;
      for (size_t i = 0; i < factors_.size(); ++i) s += factors_[i]->word_length(p[i]);
      return s;
    }
    case Kind::Finite:
      return word_length_bfs(g);
  }
  throw ConfigError("bad kind");
}

void BaseGroup::bfs_extend(long radius) const {
  if (bfs_done_radius_ >= radius || bfs_closed_) return;
  if (bfs_len_.empty()) {
    bfs_len_[key(identity())] = 0;
    bfs_done_radius_ = 0;
  }
  // collect current frontier
  std::vector<std::string> frontier;
  for (const auto& [k, l] : bfs_len_)
    if (l == bfs_done_radius_) frontier.push_back(k);
  while (bfs_done_radius_ < radius && !frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& k : frontier) {
      GroupElem x = parse(k);
      for (const auto& s : gens_) {
        GroupElem y = mul(x, s);
        std::string ky = key(y);
        if (bfs_len_.emplace(ky, bfs_done_radius_ + 1).second) next.push_back(ky);
      }
      if (static_cast<long>(bfs_len_.size()) > ball_cap_) throw BallTooLarge("ball too large");
    }
    ++bfs_done_radius_;
    if (next.empty()) bfs_closed_ = true;
    frontier = std::move(next);
  }
}

long BaseGroup::word_length_bfs(const GroupElem& g) const {
  if (!valid(g)) throw ConfigError("element does not belong to this group");
  std::string k = key(g);
  std::lock_guard<std::mutex> lock(memo_mu_);
  for (long r = std::max(bfs_done_radius_, 0L);; ++r) {
    auto it = bfs_len_.find(k);
    if (it != bfs_len_.end()) return it->second;
    if (bfs_closed_ || r >= bfs_cap_) break;
    bfs_extend(r + 1);
  }
  throw RadiusExceeded("radius exceeded: element not generated within BFS cap");
}

std::vector<GroupElem> BaseGroup::ball(long radius) const {
  if (radius < 0) throw ConfigError("radius must be nonnegative");
  std::vector<std::pair<GroupElem, long>> items;
  if (kind_ == Kind::Integers) {
    for (std::int64_t n = -radius; n <= radius; ++n)
      items.emplace_back(GroupElem::integer(n), std::llabs(n));
  } else if (kind_ == Kind::Free) {
    if (std::pow(2.0 * rank_, static_cast<double>(radius)) > static_cast<double>(ball_cap_))
      throw BallTooLarge("ball too large");
    std::vector<GroupElem::FreeWord> layer = {{}};
    items.emplace_back(GroupElem::word({}), 0);
    for (long r = 1; r <= radius; ++r) {
      std::vector<GroupElem::FreeWord> next;
      for (const auto& w : layer) {
        for (int g = 1; g <= rank_; ++g) {
          for (int s : {g, -g}) {
            if (!w.empty() && w.back() == -s) continue;
            auto w2 = w;
            w2.push_back(s);
            next.push_back(w2);
          }
        }
      }
      for (auto& w : next) items.emplace_back(GroupElem::word(w), r);
      layer = std::move(next);
    }
  } else {
    std::lock_guard<std::mutex> lock(memo_mu_);
    bfs_extend(radius);
    if (!bfs_closed_ && bfs_done_radius_ < radius)
      throw RadiusExceeded("radius exceeded: BFS incomplete");
    for (const auto& [k, l] : bfs_len_)
      if (l <= radius) items.emplace_back(parse(k), l);
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return payload_less(a.first, b.first);
  });
  std::vector<GroupElem> out;
  out.reserve(items.size());
  for (auto& [e, l] : items) out.push_back(std::move(e));
  return out;
}

LengthAxiomReport verify_length_axioms(const BaseGroup& g,
                                       const std::vector<std::pair<GroupElem, GroupElem>>& sample,
                                       const std::function<long(const GroupElem&)>& length) {
  auto len = length ? length : [&g](const GroupElem& x) { return g.word_length(x); };
  LengthAxiomReport rep;
  auto note = [&](const std::string& s) { rep.violations.push_back(s); };
  for (const auto& [x, y] : sample) {
    long lx = len(x), ly = len(y);
    if ((lx == 0) != g.is_identity(x))
      note("l(x)=0 iff x=1 fails at x=" + g.key(x));
    if (lx != len(g.inv(x)))
      note("l(x)=l(x^-1) fails at x=" + g.key(x));
    if (len(g.mul(x, y)) > lx + ly)
      note("l(xy)<=l(x)+l(y) fails at x=" + g.key(x) + " y=" + g.key(y));
  }
  return rep;
}

}  // namespace hscomp
