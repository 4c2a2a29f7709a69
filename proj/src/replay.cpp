// Certificate checker. Deliberately shares no code with the prover beyond the
// model's pair() and is_member(): every inequality, bound and candidate set is
// rebuilt here from scratch.

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "prym/effectivity.hpp"

namespace prym {

namespace {

struct Checker {
  const LatticeModel& model;
  const NonEffectivityCertificate& cert;
  std::vector<std::string> problems;
  std::vector<std::size_t> curve_coords;  // orthogonal basis (-2)-vectors
  std::vector<std::size_t> other_coords;

  void fail(std::size_t node, const std::string& what) {
    problems.push_back("node " + std::to_string(node) + ": " + what);
  }

  void classify() {
    for (std::size_t k = 0; k < model.rank(); ++k) {
      bool ok = model.gram(k, k) == Rational(-2);
      for (std::size_t m = 0; ok && m < model.rank(); ++m) ok = m == k || model.gram(k, m).sign() == 0;
      (ok ? curve_coords : other_coords).push_back(k);
    }
  }

  bool in_curve_span(const LatticeClass& v) const {
    for (auto k : other_coords) {
      if (v.doubled(k) != 0) return false;
    }
    return true;
  }

  bool nonneg_integral(const LatticeClass& v) const {
    for (auto k : curve_coords) {
      if (v.doubled(k) < 0 || v.doubled(k) % 2 != 0) return false;
    }
    return true;
  }

  bool exceptional_ok(const LatticeClass& v) const {
    if (!in_curve_span(v) || nonneg_integral(v)) return false;
    // Every curve coordinate used must be a declared (-2)-curve.
    for (auto k : curve_coords) {
      if (v.doubled(k) == 0) continue;
      bool declared = false;
      for (const auto& n : model.known_neg2_curves()) declared = declared || n == model.basis_vector(k);
      if (!declared) return false;
    }
    return true;
  }

  LinearInequality rebuild(const LatticeClass& b, InequalitySource src, std::size_t idx, bool& ok) {
    LinearInequality q{src, idx, {}, Rational(0)};
    ok = true;
    const bool curve = src == InequalitySource::curve_on_candidate;
    const auto& pool = curve ? model.known_neg2_curves() : model.nef_classes();
    if (idx >= pool.size()) {
      ok = false;
      return q;
    }
    const LatticeClass& h = pool[idx];
    if (curve && model.pair(b, h).sign() < 0) ok = false;
    for (std::size_t k = 0; k < model.rank(); ++k) {
      Rational c = model.pair(model.basis_vector(k), h);
      q.coeffs.push_back(src == InequalitySource::nef_on_residual ? -c : c);
    }
    if (src == InequalitySource::nef_on_residual) q.constant = model.pair(b, h);
    return q;
  }

  static Rational eval(const LinearInequality& q, const LatticeClass& d) {
    Rational acc = q.constant;
    for (std::size_t k = 0; k < q.coeffs.size(); ++k) acc += q.coeffs[k] * d.coeff(k);
    return acc;
  }

  bool check_multipliers(std::size_t id, const SearchBounds& sb, const std::vector<Rational>& mult,
                         std::size_t coord, int sign, const Rational& bound) {
    if (mult.size() != sb.inequalities.size()) {
      fail(id, "multiplier count mismatch");
      return false;
    }
    std::vector<Rational> coeffs(model.rank(), Rational(0));
    Rational constant(0);
    for (std::size_t i = 0; i < mult.size(); ++i) {
      if (mult[i].sign() < 0) {
        fail(id, "negative multiplier");
        return false;
      }
      if (mult[i].sign() == 0) continue;
      for (std::size_t k = 0; k < model.rank(); ++k) coeffs[k] += mult[i] * sb.inequalities[i].coeffs[k];
      constant += mult[i] * sb.inequalities[i].constant;
    }
    // sign = +1: combination == x - bound; sign = -1: combination == bound - x
    for (std::size_t k = 0; k < model.rank(); ++k) {
      const Rational want = k == coord ? Rational(sign) : Rational(0);
      if (coeffs[k] != want) {
        fail(id, "multipliers do not produce the bound on " + model.labels()[coord]);
        return false;
      }
    }
    if (constant != (sign > 0 ? -bound : bound)) {
      fail(id, "multipliers give a different constant for " + model.labels()[coord]);
      return false;
    }
    return true;
  }

  // All D with D^2 = -2, B.D < 0, membership and every recorded inequality,
  // by walking the box and the spheres sum (2 c_j)^2 = 2 p^2 + 4.
  std::set<LatticeClass> brute_force(const LatticeClass& b, const SearchBounds& sb) {
    std::set<LatticeClass> found;
    std::vector<std::int64_t> d(model.rank(), 0);
    std::map<std::size_t, std::pair<std::int64_t, std::int64_t>> range;
    for (const auto& cb : sb.box) {
      range[cb.coord] = {(Rational(2) * cb.lo).ceil().get_si(), (Rational(2) * cb.hi).floor().get_si()};
    }
    std::vector<Rational> w;
    for (auto k : curve_coords) w.push_back(model.pair(b, model.basis_vector(k)));
    // Each inequality scaled to integers over the doubled coordinates d:
    // sum a_k d_k + c >= 0.
    std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> scaled;
    for (const auto& q : sb.inequalities) {
      mpz_class den = q.constant.denominator();
      for (const auto& x : q.coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.denominator().get_mpz_t());
      const Rational k(den);
      std::vector<std::int64_t> a;
      for (const auto& x : q.coeffs) a.push_back((k * x).to_int64());
      scaled.emplace_back(std::move(a), (Rational(2) * k * q.constant).to_int64());
    }
    auto leaf = [&] {
      for (const auto& [a, c] : scaled) {
        __int128 acc = c;
        for (std::size_t k = 0; k < a.size(); ++k) acc += static_cast<__int128>(a[k]) * d[k];
        if (acc < 0) return;
      }
      LatticeClass v(model.name(), d);
      if (model.pair(b, v).sign() >= 0) return;
      if (!model.is_member(v) || model.square(v) != Rational(-2)) return;
      for (const auto& q : sb.inequalities) {
        if (eval(q, v).sign() < 0) return;
      }
      found.insert(v);
    };
    // Integer walk: with K clearing the denominators of B.p and every w_j / 2,
    // value = K * B.D and weight[pos] = sum over the rest of (K w_j / 2)^2.
    const std::size_t nc = curve_coords.size();
    std::vector<std::int64_t> step(nc), weight(nc + 1, 0);
    // Inequalities on a single curve coordinate restrict its sign; the leaf
    // rechecks every inequality, so this only skips points it would reject.
    std::vector<bool> allow_neg(nc, true), allow_pos(nc, true);
    for (const auto& q : sb.inequalities) {
      std::size_t hit = 0, count = 0;
      for (std::size_t k = 0; k < q.coeffs.size(); ++k) {
        if (q.coeffs[k].sign() != 0) {
          hit = k;
          ++count;
        }
      }
      if (count != 1 || q.constant.sign() != 0) continue;
      for (std::size_t pos = 0; pos < nc; ++pos) {
        if (curve_coords[pos] != hit) continue;
        if (q.coeffs[hit].sign() > 0) allow_neg[pos] = false;
        if (q.coeffs[hit].sign() < 0) allow_pos[pos] = false;
      }
    }
    std::function<void(std::size_t, std::int64_t, std::int64_t)> curves = [&](std::size_t pos, std::int64_t rem,
                                                                              std::int64_t value) {
      if (pos == nc) {
        if (rem == 0 && value < 0) leaf();
        return;
      }
      // Cauchy-Schwarz: the remaining terms lower value by at most sqrt(weight * rem).
      if (value >= 0 && static_cast<__int128>(value) * value >= static_cast<__int128>(weight[pos]) * rem) return;
      const auto k = curve_coords[pos];
      for (std::int64_t v = 0; v * v <= rem; ++v) {
        for (std::int64_t s : {v, -v}) {
          if ((s > 0 && !allow_pos[pos]) || (s < 0 && !allow_neg[pos])) {
            if (v == 0) break;
            continue;
          }
          d[k] = s;
          curves(pos + 1, rem - v * v, value + s * step[pos]);
          if (v == 0) break;
        }
      }
      d[k] = 0;
    };
    auto sphere = [&](std::int64_t rem, const Rational& bp) {
      mpz_class den = bp.denominator();
      for (const auto& x : w) {
        mpz_class h = (x / Rational(2)).denominator();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), h.get_mpz_t());
      }
      const Rational scale(den);
      for (std::size_t q = 0; q < nc; ++q) step[q] = (scale * w[q] / Rational(2)).to_int64();
      for (std::size_t q = nc; q-- > 0;) weight[q] = weight[q + 1] + step[q] * step[q];
      curves(0, rem, (scale * bp).to_int64());
    };
    std::function<void(std::size_t)> others = [&](std::size_t pos) {
      if (pos == other_coords.size()) {
        LatticeClass p(model.name(), d);
        const Rational t = Rational(2) * model.square(p) + Rational(4);
        if (t.is_integer() && t.sign() >= 0) sphere(t.to_int64(), model.pair(b, p));
        return;
      }
      const auto k = other_coords[pos];
      for (std::int64_t v = range[k].first; v <= range[k].second; ++v) {
        d[k] = v;
        others(pos + 1);
      }
      d[k] = 0;
    };
    others(0);
    return found;
  }

  void check_branch(std::size_t id, const LatticeClass& b, const SearchBounds& sb, const PrunedBranch& c) {
    if (c.point.rank() != model.rank()) {
      fail(id, "malformed contradiction branch");
      return;
    }
    for (auto k : curve_coords) {
      if (c.point.doubled(k) != 0) fail(id, "contradiction branch has curve coefficients");
    }
    for (const auto& cb : sb.box) {
      if (c.point.coeff(cb.coord) < cb.lo || c.point.coeff(cb.coord) > cb.hi) fail(id, "branch outside the box");
    }
    Rational weight(0);
    for (auto k : curve_coords) {
      const Rational x = model.pair(b, model.basis_vector(k));
      weight += x * x;
    }
    const Rational norm = (model.square(c.point) + Rational(2)) / Rational(2);
    const Rational bp = model.pair(b, c.point);
    if (bp != c.pairing || weight != c.curve_weight || norm != c.norm) fail(id, "branch data do not recompute");
    if (bp.sign() < 0 || bp * bp < weight * norm) fail(id, "branch does not force B.D >= 0");
  }

  void check_node(std::size_t id) {
    const CertificateNode& n = cert.nodes[id];
    if (n.id != id) fail(id, "id field is " + std::to_string(n.id));
    if (n.target.rank() != model.rank() || n.reduced.rank() != model.rank()) {
      fail(id, "class rank mismatch");
      return;
    }
    if (!model.is_member(n.target)) fail(id, "target is not a lattice member");

    LatticeClass cur = n.target;
    for (auto s : n.peeled) {
      if (s >= model.known_neg2_curves().size()) {
        fail(id, "peel step names an unknown curve");
        return;
      }
      const auto& c = model.known_neg2_curves()[s];
      if (model.pair(cur, c).sign() >= 0) fail(id, "peel step subtracts a curve the class does not meet negatively");
      cur -= c;
    }
    if (cur != n.reduced) fail(id, "peeling does not reproduce the reduced class");
    const LatticeClass& b = n.reduced;

    switch (n.kind) {
      case NodeKind::negative_on_nef: {
        if (!n.nef_index || *n.nef_index >= model.nef_classes().size()) {
          fail(id, "negative_on_nef without a nef index");
          return;
        }
        const Rational v = model.pair(b, model.nef_classes()[*n.nef_index]);
        if (v.sign() >= 0 || (n.value && *n.value != v)) fail(id, "pairing with nef class is " + v.str());
        if (n.depth != 0) fail(id, "leaf depth must be 0");
        return;
      }
      case NodeKind::exceptional_support:
        if (!exceptional_ok(b)) fail(id, "class is not a non-effective combination of (-2)-curves");
        if (n.depth != 0) fail(id, "leaf depth must be 0");
        return;
      case NodeKind::enumeration:
        break;
    }

    if (model.square(b) != Rational(-4)) fail(id, "reduced class has square " + model.square(b).str());
    const SearchBounds& sb = n.bounds;
    for (std::size_t i = 0; i < sb.inequalities.size(); ++i) {
      const auto& q = sb.inequalities[i];
      bool ok = false;
      const auto r = rebuild(b, q.source, q.index, ok);
      if (!ok || r.coeffs != q.coeffs || r.constant != q.constant) {
        fail(id, "inequality " + std::to_string(i) + " does not match its source");
      }
    }
    std::set<std::size_t> boxed;
    bool empty = false;
    for (const auto& cb : sb.box) {
      if (cb.coord >= model.rank()) {
        fail(id, "box coordinate out of range");
        return;
      }
      boxed.insert(cb.coord);
      check_multipliers(id, sb, cb.lo_multipliers, cb.coord, +1, cb.lo);
      check_multipliers(id, sb, cb.hi_multipliers, cb.coord, -1, cb.hi);
      if (cb.lo > cb.hi) empty = true;
    }
    if (boxed != std::set<std::size_t>(other_coords.begin(), other_coords.end())) {
      fail(id, "box does not cover exactly the non-curve coordinates");
      return;
    }

    std::set<LatticeClass> recorded;
    for (const auto& c : n.candidates) {
      recorded.insert(c.d);
      if (c.pairing != model.pair(b, c.d) || c.pairing.sign() >= 0) fail(id, "candidate pairing mismatch");
    }
    for (const auto& c : n.contradictions) check_branch(id, b, sb, c);
    if (recorded.size() != n.candidates.size()) fail(id, "duplicate candidates");
    const std::set<LatticeClass> truth = empty ? std::set<LatticeClass>{} : brute_force(b, sb);
    if (truth != recorded) {
      std::ostringstream os;
      os << "solution set differs from brute force (" << truth.size() << " found, " << recorded.size()
         << " recorded)";
      fail(id, os.str());
    }

    int depth = 1;
    for (const auto& c : n.candidates) {
      const auto& r = c.reason;
      const LatticeClass rest = b - c.d;
      const LatticeClass& expect = r.subject == "D" ? c.d : rest;
      if ((r.subject != "D" && r.subject != "B-D") || r.witness != expect) {
        fail(id, "elimination witness does not match its subject");
        continue;
      }
      switch (r.tag) {
        case EliminationTag::direct_contradiction:
          fail(id, "candidate eliminated by direct_contradiction");
          break;
        case EliminationTag::exceptional_support:
          if (!exceptional_ok(r.witness)) fail(id, "exceptional_support witness fails: " + model.format(r.witness));
          break;
        case EliminationTag::negative_on_nef: {
          if (r.subject != "B-D" || !r.nef_index || *r.nef_index >= model.nef_classes().size()) {
            fail(id, "malformed negative_on_nef elimination");
            break;
          }
          const Rational v = model.pair(rest, model.nef_classes()[*r.nef_index]);
          if (v.sign() >= 0) fail(id, "negative_on_nef witness pairs to " + v.str());
          break;
        }
        case EliminationTag::recursive: {
          if (r.subject != "B-D" || !r.sub || *r.sub >= cert.nodes.size()) {
            fail(id, "recursive elimination without a valid sub-certificate");
            break;
          }
          const auto& sub = cert.nodes[*r.sub];
          if (sub.target != rest) fail(id, "sub-certificate proves a different class");
          if (sub.depth >= n.depth) fail(id, "sub-certificate depth does not decrease");
          depth = std::max(depth, 1 + sub.depth);
          break;
        }
      }
    }
    if (depth != n.depth) fail(id, "recorded depth " + std::to_string(n.depth) + ", recomputed " + std::to_string(depth));
  }
};

}  // namespace

std::vector<std::string> replay_certificate(const LatticeModel& model, const NonEffectivityCertificate& cert) {
  Checker c{model, cert, {}, {}, {}};
  if (cert.model_name != model.name()) {
    c.problems.push_back("certificate is for model '" + cert.model_name + "', not '" + model.name() + "'");
    return c.problems;
  }
  if (cert.nodes.empty()) {
    c.problems.push_back("certificate has no nodes");
    return c.problems;
  }
  c.classify();
  for (std::size_t k = 0; k < cert.nodes.size(); ++k) c.check_node(k);
  return c.problems;
}

}  // namespace prym
