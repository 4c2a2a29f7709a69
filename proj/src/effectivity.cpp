#include "prym/effectivity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "prym/errors.hpp"
#include "structure.hpp"

namespace prym {

// ------------------------------------------------------------------ peeling

PeelTrace peel_with_trace(const LatticeModel& model, const LatticeClass& a, int max_iterations) {
  PeelTrace trace{a, {}};
  const auto& curves = model.known_neg2_curves();
  for (;;) {
    bool fired = false;
    for (std::size_t k = 0; k < curves.size(); ++k) {
      if (model.pair(trace.result, curves[k]).sign() < 0) {
        if (static_cast<int>(trace.steps.size()) >= max_iterations) {
          throw DomainError("peel_base_curves: no fixed point after " + std::to_string(max_iterations) +
                            " subtractions");
        }
        trace.result -= curves[k];
        trace.steps.push_back(k);
        fired = true;
      }
    }
    if (!fired) return trace;
  }
}

LatticeClass peel_base_curves(const LatticeModel& model, const LatticeClass& a, int max_iterations) {
  return peel_with_trace(model, a, max_iterations).result;
}

// ------------------------------------------------------------------ names

std::string to_string(InequalitySource s) {
  switch (s) {
    case InequalitySource::nef_on_candidate: return "nef_on_candidate";
    case InequalitySource::nef_on_residual: return "nef_on_residual";
    case InequalitySource::curve_on_candidate: return "curve_on_candidate";
  }
  return "?";
}

namespace {
InequalitySource parse_source(const std::string& s) {
  if (s == "nef_on_candidate") return InequalitySource::nef_on_candidate;
  if (s == "nef_on_residual") return InequalitySource::nef_on_residual;
  if (s == "curve_on_candidate") return InequalitySource::curve_on_candidate;
  throw StructuralError("unknown inequality source '" + s + "'");
}
}  // namespace

std::string to_string(EliminationTag t) {
  switch (t) {
    case EliminationTag::direct_contradiction: return "direct_contradiction";
    case EliminationTag::exceptional_support: return "exceptional_support";
    case EliminationTag::negative_on_nef: return "negative_on_nef";
    case EliminationTag::recursive: return "recursive";
  }
  return "?";
}

EliminationTag parse_elimination_tag(const std::string& s) {
  if (s == "direct_contradiction") return EliminationTag::direct_contradiction;
  if (s == "exceptional_support") return EliminationTag::exceptional_support;
  if (s == "negative_on_nef") return EliminationTag::negative_on_nef;
  if (s == "recursive") return EliminationTag::recursive;
  throw StructuralError("unknown elimination tag '" + s + "'");
}

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::negative_on_nef: return "negative_on_nef";
    case NodeKind::exceptional_support: return "exceptional_support";
    case NodeKind::enumeration: return "enumeration";
  }
  return "?";
}

namespace {
NodeKind parse_node_kind(const std::string& s) {
  if (s == "negative_on_nef") return NodeKind::negative_on_nef;
  if (s == "exceptional_support") return NodeKind::exceptional_support;
  if (s == "enumeration") return NodeKind::enumeration;
  throw StructuralError("unknown certificate node kind '" + s + "'");
}
}  // namespace

Rational LinearInequality::evaluate(const LatticeClass& d) const {
  Rational acc = constant;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].sign() != 0 && d.doubled(k) != 0) acc += coeffs[k] * d.coeff(k);
  }
  return acc;
}

// ------------------------------------------------------------------ enumeration

namespace {

LinearInequality make_inequality(const LatticeModel& model, const LatticeClass& b, InequalitySource source,
                                 std::size_t index) {
  const LatticeClass& against =
      source == InequalitySource::curve_on_candidate ? model.known_neg2_curves()[index] : model.nef_classes()[index];
  LinearInequality q{source, index, {}, Rational(0)};
  q.coeffs.reserve(model.rank());
  for (std::size_t k = 0; k < model.rank(); ++k) {
    const Rational c = model.pair(model.basis_vector(k), against);
    q.coeffs.push_back(source == InequalitySource::nef_on_residual ? -c : c);
  }
  if (source == InequalitySource::nef_on_residual) q.constant = model.pair(b, against);
  return q;
}

// One Fourier-Motzkin row: coeffs * x + constant >= 0, equal to
// sum multipliers[i] * inequality[i].
struct FmRow {
  std::vector<Rational> coeffs;
  Rational constant;
  std::vector<Rational> multipliers;
};

FmRow combine(const FmRow& p, const Rational& sp, const FmRow& q, const Rational& sq) {
  FmRow r;
  r.coeffs.resize(p.coeffs.size());
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) r.coeffs[k] = p.coeffs[k] * sp + q.coeffs[k] * sq;
  r.constant = p.constant * sp + q.constant * sq;
  r.multipliers.resize(p.multipliers.size());
  for (std::size_t k = 0; k < p.multipliers.size(); ++k) {
    r.multipliers[k] = p.multipliers[k] * sp + q.multipliers[k] * sq;
  }
  return r;
}

// Bounds on coordinate `target` implied by rows over the coordinates in
// `vars`, by eliminating every other coordinate of `vars`.
CoordinateBound fm_bound(std::vector<FmRow> rows, const std::vector<std::size_t>& vars, std::size_t target,
                         const std::string& label) {
  for (auto v : vars) {
    if (v == target) continue;
    std::vector<FmRow> pos, neg, next;
    for (auto& r : rows) {
      const int s = r.coeffs[v].sign();
      (s > 0 ? pos : (s < 0 ? neg : next)).push_back(std::move(r));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) next.push_back(combine(p, -q.coeffs[v], q, p.coeffs[v]));
    }
    rows = std::move(next);
  }
  std::optional<CoordinateBound> best_lo, best_hi;
  for (const auto& r : rows) {
    const Rational a = r.coeffs[target];
    if (a.sign() == 0) continue;
    CoordinateBound b{target, Rational(0), Rational(0), {}, {}};
    std::vector<Rational> m(r.multipliers.size());
    if (a.sign() > 0) {
      const Rational lo = -r.constant / a;
      for (std::size_t k = 0; k < m.size(); ++k) m[k] = r.multipliers[k] / a;
      if (!best_lo || lo > best_lo->lo) {
        b.lo = lo;
        b.lo_multipliers = std::move(m);
        best_lo = std::move(b);
      }
    } else {
      const Rational hi = r.constant / (-a);
      for (std::size_t k = 0; k < m.size(); ++k) m[k] = r.multipliers[k] / (-a);
      if (!best_hi || hi < best_hi->hi) {
        b.hi = hi;
        b.hi_multipliers = std::move(m);
        best_hi = std::move(b);
      }
    }
  }
  if (!best_lo) throw UnboundedSearch("unbounded search: no lower bound on coordinate " + label);
  if (!best_hi) throw UnboundedSearch("unbounded search: no upper bound on coordinate " + label);
  return CoordinateBound{target, best_lo->lo, best_hi->hi, best_lo->lo_multipliers, best_hi->hi_multipliers};
}

std::int64_t isqrt(std::int64_t n) {
  if (n <= 0) return 0;
  mpz_class r;
  mpz_class v(static_cast<long>(n));
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r.get_si();
}

}  // namespace

Enumeration enumerate_minus2_candidates(const LatticeModel& model, const LatticeClass& b, std::int64_t cap) {
  if (!model.is_member(b)) throw UnsupportedShape("target " + model.format(b) + " is not a lattice member");
  if (model.square(b) != Rational(-4)) {
    throw UnsupportedShape("target " + model.format(b) + " has square " + model.square(b).str() +
                           "; the (-2)-curve rule needs -4");
  }
  const detail::Structure st = detail::analyze(model);
  Enumeration out;
  SearchBounds& bounds = out.bounds;
  bounds.exceptional_coords = st.exceptional;

  for (std::size_t h = 0; h < model.nef_classes().size(); ++h) {
    bounds.inequalities.push_back(make_inequality(model, b, InequalitySource::nef_on_candidate, h));
    bounds.inequalities.push_back(make_inequality(model, b, InequalitySource::nef_on_residual, h));
  }
  for (std::size_t c = 0; c < model.known_neg2_curves().size(); ++c) {
    if (model.pair(b, model.known_neg2_curves()[c]).sign() >= 0) {
      bounds.inequalities.push_back(make_inequality(model, b, InequalitySource::curve_on_candidate, c));
    }
  }

  // Rows usable for the positive coordinates: no exceptional terms.
  std::vector<FmRow> rows;
  const std::size_t nq = bounds.inequalities.size();
  for (std::size_t i = 0; i < nq; ++i) {
    const auto& q = bounds.inequalities[i];
    const bool pure = std::all_of(st.exceptional.begin(), st.exceptional.end(),
                                  [&](std::size_t k) { return q.coeffs[k].sign() == 0; });
    if (!pure) continue;
    FmRow r{q.coeffs, q.constant, std::vector<Rational>(nq, Rational(0))};
    r.multipliers[i] = Rational(1);
    rows.push_back(std::move(r));
  }
  for (auto k : st.positive) {
    auto cb = fm_bound(rows, st.positive, k, model.labels()[k]);
    if (cb.lo < Rational(-cap) || cb.hi > Rational(cap)) {
      throw UnboundedSearch("unbounded search: coordinate " + model.labels()[k] + " ranges over [" + cb.lo.str() +
                            ", " + cb.hi.str() + "], beyond the cap " + std::to_string(cap));
    }
    if (cb.lo > cb.hi) bounds.feasible = false;
    bounds.box.push_back(std::move(cb));
  }
  if (!bounds.feasible) return out;

  // Single-coordinate inequalities on exceptional coordinates restrict the
  // doubled coefficient directly.
  std::map<std::size_t, std::pair<std::int64_t, std::int64_t>> exc_range;
  for (auto k : st.exceptional) exc_range[k] = {-(std::int64_t{1} << 40), std::int64_t{1} << 40};
  for (const auto& q : bounds.inequalities) {
    std::optional<std::size_t> only;
    bool single = true;
    for (std::size_t k = 0; k < q.coeffs.size(); ++k) {
      if (q.coeffs[k].sign() == 0) continue;
      if (only) single = false;
      only = k;
    }
    if (!single || !only || !exc_range.count(*only)) continue;
    // a * d / 2 + c >= 0
    const Rational a = q.coeffs[*only];
    const Rational limit = Rational(-2) * q.constant / a;
    auto& [lo, hi] = exc_range[*only];
    if (a.sign() > 0) {
      lo = std::max<std::int64_t>(lo, Rational(limit.ceil()).to_int64());
    } else {
      hi = std::min<std::int64_t>(hi, Rational(limit.floor()).to_int64());
    }
  }

  std::vector<std::int64_t> d(model.rank(), 0);

  // B.D = B.p + sum_j c_j w_j with w_j = B.N_j; tail_weight[pos] is the sum
  // of w_j^2 over exceptional coordinates from pos on.
  const std::size_t ne = st.exceptional.size();
  std::vector<Rational> w, tail_weight(ne + 1, Rational(0));
  for (auto k : st.exceptional) w.push_back(model.pair(b, model.basis_vector(k)));
  for (std::size_t pos = ne; pos-- > 0;) tail_weight[pos] = tail_weight[pos + 1] + w[pos] * w[pos];

  // Can some completion still reach B.D < 0?
  auto may_go_negative = [](const Rational& value, const Rational& weight, const Rational& norm) {
    return value.sign() < 0 || value * value < weight * norm;
  };

  auto visit_leaf = [&]() {
    LatticeClass cand(model.name(), d);
    if (model.pair(b, cand).sign() >= 0) return;
    if (!model.is_member(cand)) return;
    for (const auto& q : bounds.inequalities) {
      if (q.evaluate(cand).sign() < 0) return;
    }
    if (model.square(cand) != Rational(-2)) return;
    out.candidates.push_back(std::move(cand));
  };

  // Inside one branch everything is scaled by a common denominator K so the
  // walk runs on integers: V = K * B.D, u_j = K * w_j / 2, and the bound
  // test v^2 < W * rem / 4 becomes V^2 < (sum u_j^2) * rem.
  std::vector<std::int64_t> u(ne), tail_u(ne + 1, 0);
  std::function<void(std::size_t, std::int64_t, std::int64_t)> fill_exceptional =
      [&](std::size_t pos, std::int64_t remaining, std::int64_t value) {
        if (pos == ne) {
          if (remaining == 0 && value < 0) visit_leaf();
          return;
        }
        if (value >= 0 && static_cast<__int128>(value) * value >=
                              static_cast<__int128>(tail_u[pos]) * remaining) {
          return;
        }
        const std::size_t k = st.exceptional[pos];
        const std::int64_t r = isqrt(remaining);
        const auto [lo, hi] = exc_range[k];
        for (std::int64_t v = std::max(-r, lo); v <= std::min(r, hi); ++v) {
          d[k] = v;
          fill_exceptional(pos + 1, remaining - v * v, value + v * u[pos]);
        }
        d[k] = 0;
      };

  auto start_branch = [&](std::int64_t target, const Rational& bp) {
    mpz_class scale = bp.denominator();
    for (const auto& x : w) {
      const Rational half = x / Rational(2);
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), half.denominator().get_mpz_t());
    }
    const Rational k(scale);
    for (std::size_t j = 0; j < ne; ++j) u[j] = (k * w[j] / Rational(2)).to_int64();
    for (std::size_t j = ne; j-- > 0;) tail_u[j] = tail_u[j + 1] + u[j] * u[j];
    fill_exceptional(0, target, (k * bp).to_int64());
  };

  std::function<void(std::size_t)> fill_positive = [&](std::size_t pos) {
    if (pos == bounds.box.size()) {
      const LatticeClass p(model.name(), d);
      if (ne == 0) {
        visit_leaf();
        return;
      }
      // D^2 = Q(p) - 2 sum c_j^2 = -2  =>  sum (2 c_j)^2 = 2 Q(p) + 4.
      const Rational t = Rational(2) * model.square(p) + Rational(4);
      if (!t.is_integer() || t.sign() < 0) return;
      const std::int64_t target = t.to_int64();
      const Rational bp = model.pair(b, p);
      const Rational norm(target, 4);
      if (!may_go_negative(bp, tail_weight[0], norm)) {
        out.contradictions.push_back({p, bp, tail_weight[0], norm});
        return;
      }
      bounds.exceptional_doubled_max = std::max(bounds.exceptional_doubled_max, isqrt(target));
      start_branch(target, bp);
      return;
    }
    const auto& cb = bounds.box[pos];
    const std::int64_t lo = Rational(Rational(2) * cb.lo).ceil().get_si();
    const std::int64_t hi = Rational(Rational(2) * cb.hi).floor().get_si();
    for (std::int64_t v = lo; v <= hi; ++v) {
      d[cb.coord] = v;
      fill_positive(pos + 1);
    }
    d[cb.coord] = 0;
  };
  fill_positive(0);
  return out;
}

// ------------------------------------------------------------------ prover

namespace {

class Prover {
 public:
  Prover(const LatticeModel& model, ProverOptions opt)
      : model_(model), opt_(opt), st_(detail::analyze(model)) {}

  struct Result {
    std::optional<std::size_t> node;
    std::vector<LatticeClass> survivors;
    std::string message;
  };

  Result prove(const LatticeClass& b, int remaining, bool top) {
    const auto key = std::vector<std::int64_t>(b.doubled().begin(), b.doubled().end());
    if (auto it = proven_.find(key); it != proven_.end() && nodes_[it->second].depth <= remaining) {
      return {it->second, {}, {}};
    }
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= remaining && !top) {
      return {std::nullopt, {}, "no proof found (cached)"};
    }
    Result r = search(b, remaining, top);
    if (r.node) {
      proven_[key] = *r.node;
    } else {
      auto& f = failed_[key];
      f = std::max(f, remaining);
    }
    return r;
  }

  NonEffectivityCertificate extract(std::size_t root) const {
    // Renumber the nodes reachable from root, root first.
    std::map<std::size_t, std::size_t> renum;
    std::vector<std::size_t> order{root};
    renum[root] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& n = nodes_[order[k]];
      for (const auto& c : n.candidates) {
        if (c.reason.sub && !renum.count(*c.reason.sub)) {
          renum[*c.reason.sub] = order.size();
          order.push_back(*c.reason.sub);
        }
      }
    }
    NonEffectivityCertificate cert{model_.name(), {}};
    for (auto old : order) {
      CertificateNode n = nodes_[old];
      n.id = renum.at(old);
      for (auto& c : n.candidates) {
        if (c.reason.sub) c.reason.sub = renum.at(*c.reason.sub);
      }
      cert.nodes.push_back(std::move(n));
    }
    return cert;
  }

 private:
  std::size_t push(CertificateNode n) {
    n.id = nodes_.size();
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  bool in_exceptional_span(const LatticeClass& v) const {
    return std::all_of(st_.positive.begin(), st_.positive.end(), [&](std::size_t k) { return v.doubled(k) == 0; });
  }

  // Nonnegative integral combination of the exceptional curves.
  bool nonneg_integral(const LatticeClass& v) const {
    return std::all_of(st_.exceptional.begin(), st_.exceptional.end(),
                       [&](std::size_t k) { return v.doubled(k) >= 0 && v.doubled(k) % 2 == 0; });
  }

  std::optional<std::pair<std::size_t, Rational>> negative_nef(const LatticeClass& v) const {
    for (std::size_t h = 0; h < model_.nef_classes().size(); ++h) {
      Rational p = model_.pair(v, model_.nef_classes()[h]);
      if (p.sign() < 0) return std::make_pair(h, p);
    }
    return std::nullopt;
  }

  Result search(const LatticeClass& b, int remaining, bool top) {
    if (!model_.is_member(b)) {
      if (top) throw UnsupportedShape("target " + model_.format(b) + " is not a lattice member");
      return {std::nullopt, {}, "not a member"};
    }
    CertificateNode node;
    node.target = b;
    PeelTrace trace;
    try {
      trace = peel_with_trace(model_, b);
    } catch (const DomainError&) {
      if (top) throw;
      return {std::nullopt, {}, "peeling did not terminate"};
    }
    node.peeled = trace.steps;
    node.reduced = trace.result;
    const LatticeClass& red = node.reduced;

    if (auto neg = negative_nef(red)) {
      node.kind = NodeKind::negative_on_nef;
      node.nef_index = neg->first;
      node.value = neg->second;
      return {push(std::move(node)), {}, {}};
    }
    if (!st_.exceptional.empty() && in_exceptional_span(red)) {
      if (nonneg_integral(red)) {
        return {std::nullopt, {}, model_.format(red) + " is a nonnegative combination of (-2)-curves"};
      }
      node.kind = NodeKind::exceptional_support;
      return {push(std::move(node)), {}, {}};
    }
    if (model_.square(red) != Rational(-4)) {
      if (top) {
        throw UnsupportedShape("after peeling, " + model_.format(red) + " has square " + model_.square(red).str() +
                               "; the (-2)-curve rule needs -4");
      }
      return {std::nullopt, {}, "square " + model_.square(red).str() + " outside the -4 schema"};
    }
    if (remaining < 1) return {std::nullopt, {}, "depth exhausted"};

    Enumeration en;
    try {
      en = enumerate_minus2_candidates(model_, red, opt_.cap);
    } catch (const UnboundedSearch&) {
      if (top) throw;
      return {std::nullopt, {}, "unbounded search"};
    }
    node.kind = NodeKind::enumeration;
    node.bounds = std::move(en.bounds);
    node.contradictions = std::move(en.contradictions);

    Result res;
    int depth = 1;
    for (const auto& d : en.candidates) {
      const Rational bd = model_.pair(red, d);
      auto why = eliminate(red, d, remaining, depth);
      if (!why) {
        res.survivors.push_back(d);
        if (!top) break;
        continue;
      }
      node.candidates.push_back({d, bd, std::move(*why)});
    }
    if (!res.survivors.empty()) {
      res.message = "no proof found: " + std::to_string(res.survivors.size()) + " candidate(s) not eliminated";
      return res;
    }
    node.depth = depth;
    res.node = push(std::move(node));
    return res;
  }

  std::optional<EliminationReason> eliminate(const LatticeClass& b, const LatticeClass& d, int remaining,
                                             int& depth) {
    EliminationReason why;
    if (in_exceptional_span(d) && !nonneg_integral(d)) {
      why.tag = EliminationTag::exceptional_support;
      why.subject = "D";
      why.witness = d;
      return why;
    }
    const LatticeClass rest = b - d;
    if (in_exceptional_span(rest) && !nonneg_integral(rest)) {
      why.tag = EliminationTag::exceptional_support;
      why.subject = "B-D";
      why.witness = rest;
      return why;
    }
    if (auto neg = negative_nef(rest)) {
      why.tag = EliminationTag::negative_on_nef;
      why.subject = "B-D";
      why.witness = rest;
      why.nef_index = neg->first;
      why.value = neg->second;
      return why;
    }
    if (remaining <= 1 && !(in_exceptional_span(rest))) {
      // A sub-proof may still be a leaf after peeling; try with zero depth.
    }
    Result sub = prove(rest, remaining - 1, false);
    if (!sub.node) return std::nullopt;
    why.tag = EliminationTag::recursive;
    why.subject = "B-D";
    why.witness = rest;
    why.sub = *sub.node;
    depth = std::max(depth, 1 + nodes_[*sub.node].depth);
    return why;
  }

  const LatticeModel& model_;
  ProverOptions opt_;
  detail::Structure st_;
  std::vector<CertificateNode> nodes_;
  std::map<std::vector<std::int64_t>, std::size_t> proven_;
  std::map<std::vector<std::int64_t>, int> failed_;
};

}  // namespace

ProofOutcome prove_non_effective(const LatticeModel& model, const LatticeClass& b, ProverOptions options) {
  if (options.max_depth < 1) throw ParameterError("max_depth must be at least 1");
  Prover prover(model, options);
  auto r = prover.prove(b, options.max_depth, true);
  ProofOutcome out;
  if (r.node) {
    out.certificate = prover.extract(*r.node);
  } else {
    out.survivors = std::move(r.survivors);
    out.message = r.message.empty() ? "no proof found" : r.message;
  }
  return out;
}

// ------------------------------------------------------------------ JSON

namespace {

nlohmann::json rationals_json(const std::vector<Rational>& v) {
  auto a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

std::vector<Rational> rationals_from(const nlohmann::json& a) {
  std::vector<Rational> v;
  for (const auto& x : a) v.push_back(Rational::parse(x.get<std::string>()));
  return v;
}

nlohmann::json bounds_json(const LatticeModel& model, const SearchBounds& b) {
  nlohmann::json j;
  auto qs = nlohmann::json::array();
  for (const auto& q : b.inequalities) {
    qs.push_back({{"source", to_string(q.source)},
                  {"index", q.index},
                  {"coeffs", rationals_json(q.coeffs)},
                  {"constant", q.constant.str()}});
  }
  j["inequalities"] = std::move(qs);
  auto box = nlohmann::json::array();
  for (const auto& c : b.box) {
    box.push_back({{"coord", c.coord},
                   {"label", model.labels()[c.coord]},
                   {"lo", c.lo.str()},
                   {"hi", c.hi.str()},
                   {"lo_multipliers", rationals_json(c.lo_multipliers)},
                   {"hi_multipliers", rationals_json(c.hi_multipliers)}});
  }
  j["box"] = std::move(box);
  j["exceptional_coords"] = b.exceptional_coords;
  j["exceptional_doubled_max"] = b.exceptional_doubled_max;
  j["feasible"] = b.feasible;
  return j;
}

SearchBounds bounds_from(const nlohmann::json& j) {
  SearchBounds b;
  for (const auto& q : j.at("inequalities")) {
    b.inequalities.push_back({parse_source(q.at("source").get<std::string>()), q.at("index").get<std::size_t>(),
                              rationals_from(q.at("coeffs")), Rational::parse(q.at("constant").get<std::string>())});
  }
  for (const auto& c : j.at("box")) {
    b.box.push_back({c.at("coord").get<std::size_t>(), Rational::parse(c.at("lo").get<std::string>()),
                     Rational::parse(c.at("hi").get<std::string>()), rationals_from(c.at("lo_multipliers")),
                     rationals_from(c.at("hi_multipliers"))});
  }
  b.exceptional_coords = j.at("exceptional_coords").get<std::vector<std::size_t>>();
  b.exceptional_doubled_max = j.at("exceptional_doubled_max").get<std::int64_t>();
  b.feasible = j.at("feasible").get<bool>();
  return b;
}

nlohmann::json reason_data(const EliminationReason& r) {
  nlohmann::json d;
  d["subject"] = r.subject;
  d["class"] = r.witness.to_json();
  if (r.nef_index) d["nef_index"] = *r.nef_index;
  if (r.value) d["value"] = r.value->str();
  if (r.sub) d["sub"] = *r.sub;
  return d;
}

nlohmann::json record_json(const LatticeModel& model, const CandidateRecord& c) {
  return {{"D", c.d.to_json()},
          {"D_text", model.format(c.d)},
          {"pairing", c.pairing.str()},
          {"reason", to_string(c.reason.tag)},
          {"data", reason_data(c.reason)}};
}

CandidateRecord record_from(const std::string& model_name, const nlohmann::json& j) {
  CandidateRecord c;
  c.d = LatticeClass::from_json(model_name, j.at("D"));
  c.pairing = Rational::parse(j.at("pairing").get<std::string>());
  c.reason.tag = parse_elimination_tag(j.at("reason").get<std::string>());
  const auto& d = j.at("data");
  c.reason.subject = d.at("subject").get<std::string>();
  c.reason.witness = LatticeClass::from_json(model_name, d.at("class"));
  if (d.contains("nef_index")) c.reason.nef_index = d["nef_index"].get<std::size_t>();
  if (d.contains("value")) c.reason.value = Rational::parse(d["value"].get<std::string>());
  if (d.contains("sub")) c.reason.sub = d["sub"].get<std::size_t>();
  return c;
}

nlohmann::json node_json(const LatticeModel& model, const CertificateNode& n) {
  nlohmann::json j;
  j["id"] = n.id;
  j["target"] = n.target.to_json();
  j["target_text"] = model.format(n.target);
  j["kind"] = to_string(n.kind);
  j["peeled"] = n.peeled;
  j["reduced"] = n.reduced.to_json();
  if (n.nef_index) j["nef_index"] = *n.nef_index;
  if (n.value) j["value"] = n.value->str();
  if (n.kind == NodeKind::enumeration) j["bounds"] = bounds_json(model, n.bounds);
  auto cs = nlohmann::json::array();
  for (const auto& c : n.candidates) cs.push_back(record_json(model, c));
  j["candidates"] = std::move(cs);
  auto xs = nlohmann::json::array();
  for (const auto& c : n.contradictions) {
    xs.push_back({{"point", c.point.to_json()},
                  {"point_text", model.format(c.point)},
                  {"reason", to_string(EliminationTag::direct_contradiction)},
                  {"data", {{"pairing", c.pairing.str()}, {"curve_weight", c.curve_weight.str()}, {"norm", c.norm.str()}}}});
  }
  j["contradictions"] = std::move(xs);
  j["sub_certificates"] = nlohmann::json::array();
  j["depth"] = n.depth;
  return j;
}

CertificateNode node_from(const std::string& model_name, const nlohmann::json& j) {
  CertificateNode n;
  n.id = j.at("id").get<std::size_t>();
  n.target = LatticeClass::from_json(model_name, j.at("target"));
  n.kind = parse_node_kind(j.at("kind").get<std::string>());
  n.peeled = j.at("peeled").get<std::vector<std::size_t>>();
  n.reduced = LatticeClass::from_json(model_name, j.at("reduced"));
  if (j.contains("nef_index")) n.nef_index = j["nef_index"].get<std::size_t>();
  if (j.contains("value")) n.value = Rational::parse(j["value"].get<std::string>());
  if (j.contains("bounds")) n.bounds = bounds_from(j["bounds"]);
  for (const auto& c : j.at("candidates")) n.candidates.push_back(record_from(model_name, c));
  for (const auto& c : j.at("contradictions")) {
    const auto& d = c.at("data");
    n.contradictions.push_back({LatticeClass::from_json(model_name, c.at("point")),
                                Rational::parse(d.at("pairing").get<std::string>()),
                                Rational::parse(d.at("curve_weight").get<std::string>()),
                                Rational::parse(d.at("norm").get<std::string>())});
  }
  n.depth = j.at("depth").get<int>();
  return n;
}

}  // namespace

nlohmann::json NonEffectivityCertificate::to_json(const LatticeModel& model) const {
  nlohmann::json j = node_json(model, root());
  j["model_name"] = model_name;
  j["model"] = model.to_json();
  auto subs = nlohmann::json::array();
  for (std::size_t k = 1; k < nodes.size(); ++k) subs.push_back(node_json(model, nodes[k]));
  j["sub_certificates"] = std::move(subs);
  return j;
}

NonEffectivityCertificate NonEffectivityCertificate::from_json(const nlohmann::json& j, const LatticeModel& model) {
  try {
    NonEffectivityCertificate c;
    c.model_name = j.at("model_name").get<std::string>();
    if (c.model_name != model.name()) {
      throw StructuralError("certificate is for model '" + c.model_name + "', not '" + model.name() + "'");
    }
    c.nodes.push_back(node_from(c.model_name, j));
    for (const auto& s : j.at("sub_certificates")) c.nodes.push_back(node_from(c.model_name, s));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace prym
