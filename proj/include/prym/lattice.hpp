#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "prym/rational.hpp"

namespace prym {

/// The four Picard lattices of (hyperelliptic) standard and non-standard
/// Nikulin surfaces, plus models read from JSON.
enum class ModelKind {
  standard,
  standard_hyperelliptic,
  nonstandard,
  nonstandard_hyperelliptic,
  custom,
};

std::string to_string(ModelKind kind);
/// Accepts "standard", "standard-hyp", "nonstandard", "nonstandard-hyp" and
/// the underscore spellings.
ModelKind parse_model_kind(std::string_view text);

/// A vector of coefficients over a model's ambient basis. Coefficients are
/// kept doubled, so every half-integer is an exact integer here.
class LatticeClass {
 public:
  LatticeClass() = default;
  LatticeClass(std::string model_name, std::vector<std::int64_t> doubled);

  /// Builds from rational coefficients; throws ParseError when a coefficient
  /// is not a half-integer.
  static LatticeClass from_rationals(std::string model_name, std::span<const Rational> coeffs);

  [[nodiscard]] const std::string& model_name() const { return model_; }
  [[nodiscard]] std::size_t rank() const { return doubled_.size(); }
  [[nodiscard]] std::span<const std::int64_t> doubled() const { return doubled_; }
  [[nodiscard]] std::int64_t doubled(std::size_t k) const { return doubled_[k]; }
  [[nodiscard]] Rational coeff(std::size_t k) const { return Rational(doubled_[k], 2); }
  [[nodiscard]] std::vector<Rational> coeffs() const;
  [[nodiscard]] bool is_zero() const;

  LatticeClass& operator+=(const LatticeClass& o);
  LatticeClass& operator-=(const LatticeClass& o);
  friend LatticeClass operator+(LatticeClass a, const LatticeClass& b) { return a += b; }
  friend LatticeClass operator-(LatticeClass a, const LatticeClass& b) { return a -= b; }
  friend LatticeClass operator-(LatticeClass a);
  friend LatticeClass operator*(std::int64_t k, LatticeClass a);

  friend bool operator==(const LatticeClass& a, const LatticeClass& b) = default;
  friend auto operator<=>(const LatticeClass& a, const LatticeClass& b) = default;

  /// Array of "p/q" strings.
  [[nodiscard]] nlohmann::json to_json() const;
  static LatticeClass from_json(const std::string& model_name, const nlohmann::json& j);

 private:
  void check_same(const LatticeClass& o) const;

  std::string model_;
  std::vector<std::int64_t> doubled_;
};

/// A rank-n inner-product space with a half-integer membership rule.
///
/// Membership: every coordinate must be integral, except that the parity
/// vector of the doubled coefficients may be any mod-2 sum of the indicator
/// vectors of `parity_groups`. For pairwise disjoint groups this is the
/// familiar "doubled coefficients share parity inside each group, all other
/// coordinates integral"; overlapping groups express lattices such as
/// <L, N1..N8, e, (L-N1-N2)/2>.
class LatticeModel {
 public:
  struct Data {
    std::string name;
    ModelKind kind = ModelKind::custom;
    int genus_param = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> gram;
    std::vector<std::vector<std::size_t>> parity_groups;
    std::vector<std::pair<std::string, std::vector<Rational>>> named_classes;
    std::vector<std::vector<Rational>> nef;
    std::vector<std::vector<Rational>> neg2;
  };

  /// Validates every model invariant; throws StructuralError on violation.
  explicit LatticeModel(Data data);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] ModelKind kind() const { return kind_; }
  [[nodiscard]] int genus_param() const { return genus_param_; }
  [[nodiscard]] std::size_t rank() const { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const Rational& gram(std::size_t a, std::size_t b) const { return gram_[a][b]; }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& parity_groups() const { return groups_; }
  [[nodiscard]] const std::map<std::string, LatticeClass>& named_classes() const { return named_; }
  [[nodiscard]] const std::vector<LatticeClass>& nef_classes() const { return nef_; }
  [[nodiscard]] const std::vector<LatticeClass>& known_neg2_curves() const { return neg2_; }

  /// Index of a basis label, if present.
  [[nodiscard]] std::optional<std::size_t> label_index(std::string_view label) const;
  [[nodiscard]] LatticeClass basis_vector(std::size_t k) const;
  [[nodiscard]] LatticeClass zero() const;
  /// Named class lookup; throws ParseError for unknown names.
  [[nodiscard]] const LatticeClass& named(std::string_view label) const;

  /// v^T * gram * w. Throws StructuralError on a rank or model mismatch.
  [[nodiscard]] Rational pair(const LatticeClass& v, const LatticeClass& w) const;
  [[nodiscard]] Rational square(const LatticeClass& v) const { return pair(v, v); }
  [[nodiscard]] bool is_member(const LatticeClass& v) const;

  /// Resolves a rational linear combination of named classes such as
  /// "L - 3*E - e" or "(L - N1 - N2)/2". The result need not be a member.
  [[nodiscard]] LatticeClass class_from_expr(std::string_view expr) const;

  /// Human-readable form in terms of the basis labels, e.g. "L - 3E - 1/2N1".
  [[nodiscard]] std::string format(const LatticeClass& v) const;

  [[nodiscard]] nlohmann::json to_json() const;
  static LatticeModel from_json(const nlohmann::json& j);

 private:
  void check_class(const LatticeClass& v) const;

  std::string name_;
  ModelKind kind_;
  int genus_param_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Rational>> gram_;
  // 4 * gram when that is integral; enables a fast pairing path.
  std::optional<std::vector<std::vector<std::int64_t>>> gram_int_;
  std::vector<std::vector<std::size_t>> groups_;
  // Row-reduced mod-2 basis of the group indicator vectors (bit k = coord k).
  std::vector<std::uint64_t> glue_basis_;
  std::map<std::string, LatticeClass> named_;
  std::vector<LatticeClass> nef_;
  std::vector<LatticeClass> neg2_;
};

/// Builds one of the four Nikulin models. `genus_param` is the genus g for
/// the standard kinds and the index i for the non-standard kinds (L^2 = 16i-4).
/// Throws ParameterError when a required square would be non-positive.
LatticeModel build_model(ModelKind kind, int genus_param);

}  // namespace prym
