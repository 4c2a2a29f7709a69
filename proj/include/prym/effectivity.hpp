#pragma once

// Certificate-producing proof search for non-effectivity of classes on the
// Nikulin lattice models.
//
// Inference rule: a class B with B^2 = -4 that is effective contains some
// irreducible (-2)-curve D with B - D effective and B.D < 0. The prover
// enumerates every lattice class that could play the role of D inside a box
// cut out by nef and (-2)-curve inequalities, and closes each one with a leaf
// rule or by recursing on B - D. Leaf rules:
//   * negative_on_nef      B (or B - D) pairs negatively with a nef class
//   * exceptional_support  a class in span(N1..N8) is effective only as a
//                          nonnegative integral combination of the Nj
//   * direct_contradiction B.D >= 0 is forced on a whole branch
// Before enumerating, known (-2)-curves N with B.N < 0 are peeled off
// (they lie in the base locus of any effective B).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "prym/lattice.hpp"
#include "prym/rational.hpp"

namespace prym {

inline constexpr int kDefaultMaxDepth = 3;
inline constexpr std::int64_t kDefaultCoefficientCap = 32;
inline constexpr int kDefaultPeelIterations = 1024;

/// Subtracts known (-2)-curves N with A.N < 0 until none is left.
/// Throws DomainError after `max_iterations` subtractions.
LatticeClass peel_base_curves(const LatticeModel& model, const LatticeClass& a,
                              int max_iterations = kDefaultPeelIterations);

/// Same as peel_base_curves but also returns the indices (into
/// model.known_neg2_curves()) subtracted, in order.
struct PeelTrace {
  LatticeClass result;
  std::vector<std::size_t> steps;
};
PeelTrace peel_with_trace(const LatticeModel& model, const LatticeClass& a,
                          int max_iterations = kDefaultPeelIterations);

// ------------------------------------------------------------------ bounds

/// Where a recorded inequality comes from. The checker rebuilds each one from
/// this tag alone.
enum class InequalitySource {
  nef_on_candidate,    // D.H >= 0
  nef_on_residual,     // (B - D).H >= 0
  curve_on_candidate,  // D.N >= 0 for a known curve N with B.N >= 0
};

std::string to_string(InequalitySource s);

/// sum_k coeffs[k] * x_k + constant >= 0 over the coordinates x of D.
struct LinearInequality {
  InequalitySource source;
  std::size_t index;  // nef class or known-curve index
  std::vector<Rational> coeffs;
  Rational constant;

  [[nodiscard]] Rational evaluate(const LatticeClass& d) const;
};

/// lo <= x_coord <= hi, with nonnegative multipliers over the inequality list
/// whose combination is x_coord - lo (resp. hi - x_coord) identically.
struct CoordinateBound {
  std::size_t coord;
  Rational lo;
  Rational hi;
  std::vector<Rational> lo_multipliers;
  std::vector<Rational> hi_multipliers;
};

struct SearchBounds {
  std::vector<LinearInequality> inequalities;
  /// Bounds on the coordinates that are not known (-2)-curves.
  std::vector<CoordinateBound> box;
  /// Coordinates that are basis (-2)-curves, orthogonal to each other and to
  /// every other coordinate; their coefficients satisfy
  /// D^2 = Q(positive part) - 2 * sum c_j^2.
  std::vector<std::size_t> exceptional_coords;
  /// Largest |2 c_j| any solution can have.
  std::int64_t exceptional_doubled_max = 0;
  /// False when the inequalities are infeasible (empty box).
  bool feasible = true;
};

/// A point p of the box (curve coordinates zero) none of whose completions
/// D = p + sum c_j N_j can have B.D < 0. With S = sum c_j^2 = (p^2 + 2) / 2
/// and W = sum (B.N_j)^2, Cauchy-Schwarz gives B.D >= B.p - sqrt(W S), so
/// B.p >= 0 and (B.p)^2 >= W S settle the whole branch.
struct PrunedBranch {
  LatticeClass point;
  Rational pairing;       // B.p
  Rational curve_weight;  // W
  Rational norm;          // S
};

struct Enumeration {
  SearchBounds bounds;
  /// Solutions with B.D < 0.
  std::vector<LatticeClass> candidates;
  /// Branches closed by direct contradiction (B.D >= 0 forced).
  std::vector<PrunedBranch> contradictions;
};

/// Every member class D with D^2 = -2 and B.D < 0 satisfying the nef and
/// (-2)-curve inequalities. Requires B a member with B^2 = -4
/// (UnsupportedShape otherwise). Throws UnboundedSearch naming a coordinate
/// the inequalities fail to bound or that exceeds `cap` in absolute value.
Enumeration enumerate_minus2_candidates(const LatticeModel& model, const LatticeClass& b,
                                        std::int64_t cap = kDefaultCoefficientCap);

// ------------------------------------------------------------- certificates

enum class EliminationTag { direct_contradiction, exceptional_support, negative_on_nef, recursive };

std::string to_string(EliminationTag t);
EliminationTag parse_elimination_tag(const std::string& s);

/// Why a candidate D cannot be the (-2)-curve the rule asks for.
struct EliminationReason {
  EliminationTag tag = EliminationTag::recursive;
  /// "D" or "B-D": which class the witness is about.
  std::string subject;
  LatticeClass witness;
  /// negative_on_nef: the nef class index and the (negative) pairing.
  std::optional<std::size_t> nef_index;
  std::optional<Rational> value;
  /// recursive: node id of the sub-certificate proving `witness` non-effective.
  std::optional<std::size_t> sub;
};

struct CandidateRecord {
  LatticeClass d;
  Rational pairing;  // B.D
  EliminationReason reason;
};

enum class NodeKind { negative_on_nef, exceptional_support, enumeration };
std::string to_string(NodeKind k);

/// One proof step. Leaves prove `target` directly; enumeration nodes peel,
/// enumerate and eliminate every candidate.
struct CertificateNode {
  std::size_t id = 0;
  LatticeClass target;
  NodeKind kind = NodeKind::enumeration;
  std::optional<std::size_t> nef_index;  // negative_on_nef leaf
  std::optional<Rational> value;
  std::vector<std::size_t> peeled;  // known-curve indices, in order
  LatticeClass reduced;             // target after peeling
  SearchBounds bounds;
  std::vector<CandidateRecord> candidates;
  std::vector<PrunedBranch> contradictions;
  int depth = 0;
};

/// Replayable proof that nodes[0].target is not effective. Sub-certificates
/// are shared: recursive reasons refer to nodes by id, so the proof is a DAG
/// whose depth strictly decreases along every edge.
struct NonEffectivityCertificate {
  std::string model_name;
  std::vector<CertificateNode> nodes;

  [[nodiscard]] const CertificateNode& root() const { return nodes.front(); }
  [[nodiscard]] const LatticeClass& target() const { return root().target; }
  [[nodiscard]] int depth() const { return root().depth; }

  /// Root fields at top level, the other nodes under "sub_certificates", and
  /// the model document under "model" so the file replays on its own.
  [[nodiscard]] nlohmann::json to_json(const LatticeModel& model) const;
  static NonEffectivityCertificate from_json(const nlohmann::json& j, const LatticeModel& model);
};

struct ProofOutcome {
  std::optional<NonEffectivityCertificate> certificate;
  /// When no proof is found: candidates that could not be eliminated at the
  /// root, and a short explanation.
  std::vector<LatticeClass> survivors;
  std::string message;

  [[nodiscard]] bool proven() const { return certificate.has_value(); }
};

struct ProverOptions {
  int max_depth = kDefaultMaxDepth;
  std::int64_t cap = kDefaultCoefficientCap;
};

/// Sound, incomplete prover. A failed search means "no proof found", never
/// "effective". Throws UnsupportedShape when B is not a member or, after
/// leaves and peeling, B^2 != -4; UnboundedSearch from the enumeration.
ProofOutcome prove_non_effective(const LatticeModel& model, const LatticeClass& b, ProverOptions options = {});

/// Independent replay: re-derives every inequality, bound, candidate set and
/// elimination from the model's pairing and membership alone. Returns the
/// list of problems found; empty means the certificate is valid.
std::vector<std::string> replay_certificate(const LatticeModel& model, const NonEffectivityCertificate& cert);

// ------------------------------------------------------- decompositions

struct Decomposition {
  LatticeClass a1;
  LatticeClass a2;
  bool a1_rigid = false;
  bool a2_rigid = false;
};

struct DecompositionReport {
  bool no_moving_decomposition = false;
  std::int64_t rigid_cap = 1;
  std::vector<Decomposition> inspected;

  [[nodiscard]] nlohmann::json to_json(const LatticeModel& model) const;
};

/// Splits H = A1 + A2 with L-coefficients (a1, a2) nonnegative integers
/// summing to 1. The part with L-coefficient 0 lies in span(N1..N8), so it is
/// rigid (h0 <= 1); its effective representatives are sum n_j N_j, listed for
/// 0 <= n_j <= rigid_cap. Needs a model with a single integral non-curve
/// coordinate and H with L-coefficient 1 (UnsupportedShape otherwise).
DecompositionReport check_no_moving_decomposition(const LatticeModel& model, const LatticeClass& h,
                                                  std::int64_t rigid_cap = 1);

// ------------------------------------------------------------- suites

enum class VanishingSuite { lemma_4_2, lemma_4_4, thm_3_1_decomposition, thm_4_1_chain };

std::string to_string(VanishingSuite s);
VanishingSuite parse_vanishing_suite(const std::string& s);

enum class Status { pass, fail, error };
std::string to_string(Status s);

struct SuiteEntry {
  std::string suite;
  int parameter = 0;
  Status status = Status::error;
  std::string message;
  nlohmann::json artifact;
};

/// Runs one named family over `first..last` (inclusive). Failures are
/// recorded per parameter; the sweep never stops early. Parameters run in
/// parallel; entries come back in parameter order.
std::vector<SuiteEntry> verify_vanishing_suite(VanishingSuite kind, int first, int last);

/// Recursion depth the suites allow for parameter i. Proofs for iE - e and
/// (i-1)E + e step down one multiple of E per level, so they need depth i.
int suite_depth(int i);

}  // namespace prym
