#include "hscomp/hnn.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>

namespace hscomp {

HnnExtension::HnnExtension(std::shared_ptr<const BaseGroup> h, SubgroupSpec spec)
    : h_(std::move(h)), spec_(std::move(spec)) {
  if (!spec_.in_f || !spec_.theta || !spec_.in_theta_f || !spec_.theta_inv || !spec_.rep_f ||
      !spec_.rep_theta_f)
    throw ConfigError("incomplete subgroup specification");
  if (!spec_.in_f(h_->identity())) throw ConfigError("F must contain the identity");
}

HnnExtension HnnExtension::from_lists(std::shared_ptr<const BaseGroup> h,
                                      std::vector<GroupElem> f_elements,
                                      std::vector<GroupElem> theta_images) {
  if (f_elements.empty() || f_elements.size() != theta_images.size())
    throw ConfigError("theta undefined on a required element");
  auto idx_of = [](const std::vector<GroupElem>& v, const GroupElem& x) {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] == x) return static_cast<long>(i);
    return -1L;
  };
  // subgroup checks on both sides, and theta a homomorphism
  for (size_t i = 0; i < f_elements.size(); ++i) {
    if (!h->valid(f_elements[i]) || !h->valid(theta_images[i]))
      throw ConfigError("subgroup element outside the base group");
    if (idx_of(f_elements, h->inv(f_elements[i])) < 0)
      throw ConfigError("F not closed under inverse");
    for (size_t j = 0; j < f_elements.size(); ++j) {
      long k = idx_of(f_elements, h->mul(f_elements[i], f_elements[j]));
      if (k < 0) throw ConfigError("F not closed under multiplication");
      if (!(h->mul(theta_images[i], theta_images[j]) == theta_images[k]))
        throw ConfigError("theta is not a homomorphism");
    }
    for (size_t j = i + 1; j < f_elements.size(); ++j)
      if (theta_images[i] == theta_images[j]) throw ConfigError("theta is not injective");
  }
  if (idx_of(f_elements, h->identity()) < 0) throw ConfigError("F must contain the identity");

  auto fe = std::make_shared<std::vector<GroupElem>>(f_elements);
  auto ti = std::make_shared<std::vector<GroupElem>>(theta_images);
  SubgroupSpec s;
  s.elements = f_elements;
  s.in_f = [h, fe, idx_of](const GroupElem& x) { return idx_of(*fe, x) >= 0; };
  s.in_theta_f = [h, ti, idx_of](const GroupElem& x) { return idx_of(*ti, x) >= 0; };
  s.theta = [h, fe, ti, idx_of](const GroupElem& x) {
    long i = idx_of(*fe, x);
    if (i < 0) throw ConfigError("theta undefined on a required element");
    return (*ti)[i];
  };
  s.theta_inv = [h, fe, ti, idx_of](const GroupElem& x) {
    long i = idx_of(*ti, x);
    if (i < 0) throw ConfigError("theta inverse undefined on a required element");
    return (*fe)[i];
  };
  auto min_rep = [h](const GroupElem& g, const std::vector<GroupElem>& sub) {
    GroupElem best = h->mul(g, sub[0]);
    long bl = h->word_length(best);
    for (size_t i = 1; i < sub.size(); ++i) {
      GroupElem c = h->mul(g, sub[i]);
      long l = h->word_length(c);
      if (l < bl || (l == bl && payload_less(c, best))) {
        best = c;
        bl = l;
      }
    }
    return best;
  };
  s.rep_f = [h, fe, min_rep](const GroupElem& g) { return min_rep(g, *fe); };
  s.rep_theta_f = [h, ti, min_rep](const GroupElem& g) { return min_rep(g, *ti); };
  if (h->finite_universe()) {
    long order = static_cast<long>(h->ball(1000000).size());
    s.index_f = order / static_cast<long>(f_elements.size());
    s.index_theta_f = order / static_cast<long>(theta_images.size());
  } else {
    s.index_f = -1;
    s.index_theta_f = -1;
  }
  return HnnExtension(std::move(h), std::move(s));
}

HnnExtension HnnExtension::baumslag_solitar(std::int64_t m) {
  if (m < 2) throw ConfigError("stable-letter multiplier must be >= 2");
  auto z = BaseGroup::integers();
  auto val = [](const GroupElem& g) { return std::get<GroupElem::IntPayload>(g.payload).n; };
  SubgroupSpec s;
  s.in_f = [](const GroupElem&) { return true; };
  s.in_theta_f = [m, val](const GroupElem& g) { return val(g) % m == 0; };
  s.theta = [m, val](const GroupElem& g) { return GroupElem::integer(val(g) * m); };
  s.theta_inv = [m, val](const GroupElem& g) {
    if (val(g) % m != 0) throw ConfigError("theta inverse undefined on a required element");
    return GroupElem::integer(val(g) / m);
  };
  s.rep_f = [](const GroupElem&) { return GroupElem::integer(0); };
  s.rep_theta_f = [m, val](const GroupElem& g) {
    std::int64_t r = ((val(g) % m) + m) % m;
    // minimal absolute value, positive on ties
    if (r > m - r) r -= m;
    return GroupElem::integer(r);
  };
  s.index_f = 1;
  s.index_theta_f = m;
  return HnnExtension(std::move(z), std::move(s));
}

HnnExtension::Britton HnnExtension::identity() const {
  return Britton{{}, h_->identity(), h_->identity()};
}

bool HnnExtension::is_identity(const Britton& g) const {
  return g.prefix.empty() && h_->is_identity(g.alpha) && h_->is_identity(g.f);
}

HnnExtension::Britton HnnExtension::embed(const GroupElem& h) const {
  return normalize({Piece::elem(h)});
}

GroupElem HnnExtension::h_part(const Britton& g) const {
  if (!g.prefix.empty()) throw ConfigError("element is not in the base group");
  return h_->mul(g.alpha, g.f);
}

HnnExtension::Britton HnnExtension::normalize(const std::vector<Piece>& word) const {
  std::vector<Letter> prefix;
  GroupElem r = h_->identity();
  for (const auto& p : word) {
    if (std::holds_alternative<GroupElem>(p.v)) {
      const GroupElem& h = std::get<GroupElem>(p.v);
      if (!h_->valid(h)) throw ConfigError("word contains an element outside the base group");
      r = h_->mul(r, h);
      continue;
    }
    int sign = std::get<int>(p.v);
    if (sign == 1) {
      if (!prefix.empty() && prefix.back().sign == -1 && spec_.in_f(r)) {
        GroupElem g = prefix.back().gamma;
        prefix.pop_back();
        r = h_->mul(g, spec_.theta(r));
      } else {
        GroupElem rep = spec_.rep_f(r);
        GroupElem f = h_->mul(h_->inv(rep), r);
        prefix.push_back({rep, 1});
        r = spec_.theta(f);
      }
    } else if (sign == -1) {
      if (!prefix.empty() && prefix.back().sign == 1 && spec_.in_theta_f(r)) {
        GroupElem g = prefix.back().gamma;
        prefix.pop_back();
        r = h_->mul(g, spec_.theta_inv(r));
      } else {
        GroupElem rep = spec_.rep_theta_f(r);
        GroupElem tf = h_->mul(h_->inv(rep), r);
        prefix.push_back({rep, -1});
        r = spec_.theta_inv(tf);
      }
    } else {
      throw ConfigError("stable-letter power must be +1 or -1");
    }
  }
  Britton out;
  out.prefix = std::move(prefix);
  out.alpha = spec_.rep_f(r);
  out.f = h_->mul(h_->inv(out.alpha), r);
  return out;
}

std::vector<HnnExtension::Piece> HnnExtension::pieces_of(const Britton& g) const {
  std::vector<Piece> w;
  for (const auto& l : g.prefix) {
    if (!h_->is_identity(l.gamma)) w.push_back(Piece::elem(l.gamma));
    w.push_back(Piece::t(l.sign));
  }
  if (!h_->is_identity(g.alpha)) w.push_back(Piece::elem(g.alpha));
  if (!h_->is_identity(g.f)) w.push_back(Piece::elem(g.f));
  return w;
}

HnnExtension::Britton HnnExtension::mul(const Britton& a, const Britton& b) const {
  std::vector<Piece> w = pieces_of(a);
  auto wb = pieces_of(b);
  w.insert(w.end(), wb.begin(), wb.end());
  return normalize(w);
}

HnnExtension::Britton HnnExtension::inv(const Britton& a) const {
  std::vector<Piece> w;
  GroupElem tail = h_->inv(h_->mul(a.alpha, a.f));
  if (!h_->is_identity(tail)) w.push_back(Piece::elem(tail));
  for (auto it = a.prefix.rbegin(); it != a.prefix.rend(); ++it) {
    w.push_back(Piece::t(-it->sign));
    GroupElem gi = h_->inv(it->gamma);
    if (!h_->is_identity(gi)) w.push_back(Piece::elem(gi));
  }
  return normalize(w);
}

std::string HnnExtension::key(const Britton& g) const {
  std::string s;
  for (const auto& l : g.prefix) s += h_->key(l.gamma) + (l.sign == 1 ? "*t." : "*T.");
  s += "|" + h_->key(g.alpha) + "|" + h_->key(g.f);
  return s;
}

HnnExtension::Britton HnnExtension::parse(const std::string& s) const {
  size_t bar = s.find('|');
  if (bar == std::string::npos) throw ConfigError("bad normal form: " + s);
  size_t bar2 = s.find('|', bar + 1);
  if (bar2 == std::string::npos) throw ConfigError("bad normal form: " + s);
  std::vector<Piece> w;
  size_t pos = 0;
  while (pos < bar) {
    size_t dot = s.find('.', pos);
    if (dot == std::string::npos || dot > bar) throw ConfigError("bad normal form: " + s);
    std::string tok = s.substr(pos, dot - pos);
    size_t star = tok.rfind('*');
    if (star == std::string::npos || star + 2 != tok.size())
      throw ConfigError("bad normal form: " + s);
    w.push_back(Piece::elem(h_->parse(tok.substr(0, star))));
    w.push_back(Piece::t(tok[star + 1] == 't' ? 1 : -1));
    pos = dot + 1;
  }
  w.push_back(Piece::elem(h_->parse(s.substr(bar + 1, bar2 - bar - 1))));
  w.push_back(Piece::elem(h_->parse(s.substr(bar2 + 1))));
  return normalize(w);
}

std::vector<HnnExtension::Britton> HnnExtension::generators() const {
  std::vector<Britton> gens;
  for (const auto& s : h_->generators()) gens.push_back(embed(s));
  gens.push_back(normalize({Piece::t(1)}));
  gens.push_back(normalize({Piece::t(-1)}));
  return gens;
}

std::unordered_map<std::string, long> HnnExtension::bfs_length_table(long radius) const {
  std::unordered_map<std::string, long> len;
  auto gens = generators();
  std::deque<Britton> frontier;
  len[key(identity())] = 0;
  frontier.push_back(identity());
  long r = 0;
  while (r < radius && !frontier.empty()) {
    std::deque<Britton> next;
    for (const auto& w : frontier) {
      for (const auto& s : gens) {
        Britton y = mul(w, s);
        if (len.emplace(key(y), r + 1).second) next.push_back(std::move(y));
      }
      if (static_cast<long>(len.size()) > ball_cap_) throw BallTooLarge("ball too large");
    }
    ++r;
    frontier = std::move(next);
  }
  return len;
}

void HnnExtension::ensure_length_table(long radius) const {
  if (len_radius_ >= radius || len_closed_) return;
  auto table = bfs_length_table(radius);
  if (table.size() == len_.size() && len_radius_ >= 0) len_closed_ = true;
  len_ = std::move(table);
  len_radius_ = radius;
}

long HnnExtension::length(const Britton& g) const {
  std::string k = key(g);
  std::lock_guard<std::mutex> lock(memo_mu_);
  auto it = len_.find(k);
  if (it != len_.end()) return it->second;
  // grow geometrically to amortize table rebuilds
  long r = std::max(len_radius_, 2L);
  while (true) {
    r = std::min(cap_, r + std::max(2L, r / 2));
    ensure_length_table(r);
    it = len_.find(k);
    if (it != len_.end()) return it->second;
    if (r >= cap_ || len_closed_) break;
  }
  throw RadiusExceeded("radius exceeded: element beyond HNN BFS cap");
}

std::vector<HnnExtension::Britton> HnnExtension::ball(long radius) const {
  auto table = bfs_length_table(radius);
  std::vector<std::pair<std::string, long>> items(table.begin(), table.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<Britton> out;
  out.reserve(items.size());
  for (const auto& [k, l] : items) out.push_back(parse(k));
  return out;
}

HnnExtension::CosetReps HnnExtension::right_coset_reps() const {
  if (spec_.index_f <= 0 || spec_.index_theta_f <= 0)
    throw PreconditionError("right-coset enumeration needs finite index");
  CosetReps reps;
  auto same_coset_f = [this](const GroupElem& a, const GroupElem& b) {
    return spec_.in_f(h_->mul(a, h_->inv(b)));
  };
  auto same_coset_tf = [this](const GroupElem& a, const GroupElem& b) {
    return spec_.in_theta_f(h_->mul(a, h_->inv(b)));
  };
  for (long r = 0; r <= cap_; ++r) {
    std::vector<Britton> candidates;
    {
      auto ball_r = ball(r);
      for (const auto& g : ball_r)
        if (in_base(g)) candidates.push_back(g);
    }
    reps.reps_f.clear();
    reps.reps_theta_f.clear();
    for (const auto& g : candidates) {
      GroupElem h = h_part(g);
      bool fresh = true;
      for (const auto& e : reps.reps_f)
        if (same_coset_f(h, h_part(e))) fresh = false;
      if (fresh && static_cast<long>(reps.reps_f.size()) < spec_.index_f) reps.reps_f.push_back(g);
      fresh = true;
      for (const auto& e : reps.reps_theta_f)
        if (same_coset_tf(h, h_part(e))) fresh = false;
      if (fresh && static_cast<long>(reps.reps_theta_f.size()) < spec_.index_theta_f)
        reps.reps_theta_f.push_back(g);
    }
    if (static_cast<long>(reps.reps_f.size()) == spec_.index_f &&
        static_cast<long>(reps.reps_theta_f.size()) == spec_.index_theta_f)
      return reps;
  }
  throw RadiusExceeded("radius exceeded: coset table incomplete within BFS cap");
}

long HnnExtension::compute_z() const {
  CosetReps reps = right_coset_reps();
  long mx = 0;
  for (const auto& g : reps.reps_f) mx = std::max(mx, length(g));
  for (const auto& g : reps.reps_theta_f) mx = std::max(mx, length(g));
  return mx + 1;
}

// --- tree ------------------------------------------------------------------

std::string HnnExtension::vertex_key(const Vertex& v) const {
  std::string s = "v:";
  for (const auto& l : v.prefix) s += h_->key(l.gamma) + (l.sign == 1 ? "*t." : "*T.");
  return s;
}

HnnExtension::Britton HnnExtension::vertex_rep(const Vertex& v) const {
  std::vector<Piece> w;
  for (const auto& l : v.prefix) {
    if (!h_->is_identity(l.gamma)) w.push_back(Piece::elem(l.gamma));
    w.push_back(Piece::t(l.sign));
  }
  Britton rep = normalize(w);
  if (!(rep.prefix == v.prefix) || !h_->is_identity(rep.alpha) || !h_->is_identity(rep.f))
    throw ConfigError("vertex label is not a normal-form prefix");
  return rep;
}

long HnnExtension::tree_distance(const Vertex& u, const Vertex& v) const {
  size_t c = 0;
  while (c < u.prefix.size() && c < v.prefix.size() && u.prefix[c] == v.prefix[c]) ++c;
  return static_cast<long>(u.prefix.size() - c) + static_cast<long>(v.prefix.size() - c);
}

HnnExtension::Vertex HnnExtension::alpha_step(const Vertex& v) const {
  size_t ray = 0;
  while (ray < v.prefix.size() && v.prefix[ray].sign == 1 && h_->is_identity(v.prefix[ray].gamma))
    ++ray;
  Vertex out = v;
  if (ray == v.prefix.size())
    out.prefix.push_back({h_->identity(), 1});
  else
    out.prefix.pop_back();
  return out;
}

std::pair<long, long> HnnExtension::meet_under_flow(const Vertex& u, const Vertex& v) const {
  long bound = static_cast<long>(u.prefix.size() + v.prefix.size()) + 2;
  std::unordered_map<std::string, long> seen;
  Vertex cur = u;
  for (long k = 0; k <= bound; ++k) {
    seen.emplace(vertex_key(cur), k);
    cur = alpha_step(cur);
  }
  cur = v;
  for (long l = 0; l <= bound; ++l) {
    auto it = seen.find(vertex_key(cur));
    if (it != seen.end()) return {it->second, l};
    cur = alpha_step(cur);
  }
  throw ConfigError("flows failed to meet");
}

namespace {
int edge_sign_of(const HnnExtension::Vertex& v, const std::shared_ptr<const BaseGroup>&) {
  if (v.prefix.empty()) return 1;
  return v.prefix.back().sign == 1 ? -1 : 1;
}
}  // namespace

std::vector<HnnExtension::Britton> HnnExtension::edge_points(const Vertex& v) const {
  if (!spec_.elements) throw PreconditionError("edge-space enumeration needs finite F");
  size_t ray = 0;
  while (ray < v.prefix.size() && v.prefix[ray].sign == 1 && h_->is_identity(v.prefix[ray].gamma))
    ++ray;
  bool on_ray = ray == v.prefix.size();
  int sign = on_ray ? 1 : edge_sign_of(v, h_);
  Britton rep = vertex_rep(v);
  std::vector<Britton> pts;
  for (const auto& f : *spec_.elements) {
    GroupElem inside = sign == 1 ? f : spec_.theta(f);
    pts.push_back(mul(rep, embed(inside)));
  }
  std::sort(pts.begin(), pts.end(),
            [this](const Britton& a, const Britton& b) { return key(a) < key(b); });
  return pts;
}

HnnExtension::Britton HnnExtension::cross_edge(const Vertex& v, const Britton& y) const {
  size_t ray = 0;
  while (ray < v.prefix.size() && v.prefix[ray].sign == 1 && h_->is_identity(v.prefix[ray].gamma))
    ++ray;
  bool on_ray = ray == v.prefix.size();
  int sign = on_ray ? 1 : edge_sign_of(v, h_);
  if (!(vertex_of(y) == v)) throw ConfigError("point is not in the vertex space");
  Britton crossed = mul(y, normalize({Piece::t(sign)}));
  if (!(vertex_of(crossed) == alpha_step(v)))
    throw ConfigError("point is not in the edge space toward the ray");
  return crossed;
}

// --- metric decomposition along the tree -----------------------------------

const std::vector<std::pair<GroupElem, long>>& HnnExtension::base_moves(long radius) const {
  std::lock_guard<std::mutex> lock(moves_mu_);
  if (moves_radius_ < radius) {
    moves_.clear();
    auto table = bfs_length_table(radius);
    std::vector<std::pair<std::string, long>> items(table.begin(), table.end());
    std::sort(items.begin(), items.end());
    for (const auto& [k, l] : items) {
      Britton e = parse(k);
      if (in_base(e)) moves_.emplace_back(h_part(e), l);
    }
    moves_radius_ = radius;
  }
  return moves_;
}

long HnnExtension::length_via_tree(const Britton& g) const {
  const long total = length(g);
  const long dt = static_cast<long>(g.prefix.size());
  const long budget = total - dt;
  if (budget < 0) return std::numeric_limits<long>::max() / 2;

  // relative moves within a coset of H, by induced length
  const std::vector<std::pair<GroupElem, long>>& moves = base_moves(budget);

  // Dijkstra over (path position, position in coset). Hop costs are folded
  // into d_T; edge weights are the intra-coset travel only.
  struct State {
    long cost;
    long layer;
    std::string hkey;
    bool operator>(const State& o) const { return cost > o.cost; }
  };
  std::priority_queue<State, std::vector<State>, std::greater<State>> pq;
  std::unordered_map<std::string, long> best;  // "layer/hkey" -> cost
  auto push = [&](long layer, const GroupElem& h, long cost) {
    if (cost > budget) return;
    std::string sk = std::to_string(layer) + "/" + h_->key(h);
    auto it = best.find(sk);
    if (it != best.end() && it->second <= cost) return;
    best[sk] = cost;
    pq.push({cost, layer, h_->key(h)});
  };
  GroupElem target = h_->mul(g.alpha, g.f);
  push(0, h_->identity(), 0);
  long found = -1;
  while (!pq.empty()) {
    State s = pq.top();
    pq.pop();
    GroupElem h = h_->parse(s.hkey);
    std::string sk = std::to_string(s.layer) + "/" + s.hkey;
    if (best.at(sk) < s.cost) continue;
    if (s.layer == dt) {
      // close out inside the final coset
      long tail = -1;
      GroupElem delta = h_->mul(h_->inv(h), target);
      for (const auto& [mv, ml] : moves)
        if (mv == delta) tail = ml;
      if (tail >= 0 && s.cost + tail <= budget) {
        long c = s.cost + tail;
        if (found < 0 || c < found) found = c;
      }
      continue;
    }
    const Letter& step = g.prefix[static_cast<size_t>(s.layer)];
    for (const auto& [mv, ml] : moves) {
      if (s.cost + ml > budget) continue;
      GroupElem hp = h_->mul(h, mv);
      // exit condition and crossing
      if (step.sign == 1) {
        GroupElem f = h_->mul(h_->inv(step.gamma), hp);
        if (!spec_.in_f(f)) continue;
        push(s.layer + 1, spec_.theta(f), s.cost + ml);
      } else {
        GroupElem tf = h_->mul(h_->inv(step.gamma), hp);
        if (!spec_.in_theta_f(tf)) continue;
        push(s.layer + 1, spec_.theta_inv(tf), s.cost + ml);
      }
    }
  }
  if (found < 0) return std::numeric_limits<long>::max() / 2;
  return dt + found;
}

long HnnExtension::shortest_blocklength(const Britton& g) const {
  if (!spec_.elements) throw PreconditionError("shortest blocklength needs finite F");
  const auto& F = *spec_.elements;
  const int m = static_cast<int>(F.size());
  const long INF = std::numeric_limits<long>::max() / 4;
  GroupElem terminal = h_->mul(g.alpha, g.f);
  if (g.prefix.empty()) return h_->word_length(terminal);

  // corrections: h_j = c'_{j-1}^-1 gamma_j c_j with c_j = f (sign +1) or
  // theta(f) (sign -1); crossing turns c_j into c'_j = theta(f) or f.
  std::vector<long> cost(m, INF);
  for (int c = 0; c < m; ++c) {
    GroupElem cj = g.prefix[0].sign == 1 ? F[c] : spec_.theta(F[c]);
    cost[c] = h_->word_length(h_->mul(g.prefix[0].gamma, cj));
  }
  for (size_t j = 1; j < g.prefix.size(); ++j) {
    std::vector<long> next(m, INF);
    for (int cin = 0; cin < m; ++cin) {
      if (cost[cin] >= INF) continue;
      GroupElem cprev = g.prefix[j - 1].sign == 1 ? spec_.theta(F[cin]) : F[cin];
      GroupElem left = h_->mul(h_->inv(cprev), g.prefix[j].gamma);
      for (int cout = 0; cout < m; ++cout) {
        GroupElem cj = g.prefix[j].sign == 1 ? F[cout] : spec_.theta(F[cout]);
        long w = cost[cin] + h_->word_length(h_->mul(left, cj));
        next[cout] = std::min(next[cout], w);
      }
    }
    cost = std::move(next);
  }
  long bestv = INF;
  size_t last = g.prefix.size() - 1;
  for (int cin = 0; cin < m; ++cin) {
    if (cost[cin] >= INF) continue;
    GroupElem cprev = g.prefix[last].sign == 1 ? spec_.theta(F[cin]) : F[cin];
    long w = cost[cin] + h_->word_length(h_->mul(h_->inv(cprev), terminal));
    bestv = std::min(bestv, w);
  }
  return bestv;
}

}  // namespace hscomp
