#include "prym/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "prym/errors.hpp"

namespace prym {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::standard: return "standard";
    case ModelKind::standard_hyperelliptic: return "standard-hyp";
    case ModelKind::nonstandard: return "nonstandard";
    case ModelKind::nonstandard_hyperelliptic: return "nonstandard-hyp";
    case ModelKind::custom: return "custom";
  }
  return "custom";
}

ModelKind parse_model_kind(std::string_view text) {
  std::string t(text);
  std::replace(t.begin(), t.end(), '_', '-');
  if (t == "standard") return ModelKind::standard;
  if (t == "standard-hyp" || t == "standard-hyperelliptic") return ModelKind::standard_hyperelliptic;
  if (t == "nonstandard") return ModelKind::nonstandard;
  if (t == "nonstandard-hyp" || t == "nonstandard-hyperelliptic") return ModelKind::nonstandard_hyperelliptic;
  if (t == "custom") return ModelKind::custom;
  throw ParseError("unknown model kind '" + std::string(text) + "'");
}

// ---------------------------------------------------------------- LatticeClass

LatticeClass::LatticeClass(std::string model_name, std::vector<std::int64_t> doubled)
    : model_(std::move(model_name)), doubled_(std::move(doubled)) {}

LatticeClass LatticeClass::from_rationals(std::string model_name, std::span<const Rational> coeffs) {
  std::vector<std::int64_t> d;
  d.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    const Rational twice = c * Rational(2);
    if (!twice.is_integer()) {
      throw ParseError("coefficient " + c.str() + " is not a half-integer");
    }
    d.push_back(twice.to_int64());
  }
  return LatticeClass(std::move(model_name), std::move(d));
}

std::vector<Rational> LatticeClass::coeffs() const {
  std::vector<Rational> out;
  out.reserve(doubled_.size());
  for (auto d : doubled_) out.emplace_back(d, 2);
  return out;
}

bool LatticeClass::is_zero() const {
  return std::all_of(doubled_.begin(), doubled_.end(), [](auto d) { return d == 0; });
}

void LatticeClass::check_same(const LatticeClass& o) const {
  if (o.doubled_.size() != doubled_.size() || o.model_ != model_) {
    throw StructuralError("classes from different models or ranks: '" + model_ + "' vs '" + o.model_ + "'");
  }
}

LatticeClass& LatticeClass::operator+=(const LatticeClass& o) {
  check_same(o);
  for (std::size_t k = 0; k < doubled_.size(); ++k) doubled_[k] += o.doubled_[k];
  return *this;
}

LatticeClass& LatticeClass::operator-=(const LatticeClass& o) {
  check_same(o);
  for (std::size_t k = 0; k < doubled_.size(); ++k) doubled_[k] -= o.doubled_[k];
  return *this;
}

LatticeClass operator-(LatticeClass a) {
  for (auto& d : a.doubled_) d = -d;
  return a;
}

LatticeClass operator*(std::int64_t k, LatticeClass a) {
  for (auto& d : a.doubled_) d *= k;
  return a;
}

nlohmann::json LatticeClass::to_json() const {
  auto arr = nlohmann::json::array();
  for (auto d : doubled_) arr.push_back(Rational(d, 2).str());
  return arr;
}

LatticeClass LatticeClass::from_json(const std::string& model_name, const nlohmann::json& j) {
  if (!j.is_array()) throw StructuralError("class must be a JSON array of rationals");
  std::vector<Rational> cs;
  for (const auto& x : j) {
    if (x.is_string()) {
      cs.push_back(Rational::parse(x.get<std::string>()));
    } else if (x.is_number_integer()) {
      cs.emplace_back(x.get<std::int64_t>());
    } else {
      throw StructuralError("class coefficient must be a \"p/q\" string");
    }
  }
  return from_rationals(model_name, cs);
}

// ---------------------------------------------------------------- LatticeModel

namespace {

std::uint64_t parity_bits(std::span<const std::int64_t> doubled) {
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < doubled.size(); ++k) {
    if ((doubled[k] & 1) != 0) bits |= (std::uint64_t{1} << k);
  }
  return bits;
}

// Reduce `v` against a mod-2 basis kept with distinct leading bits.
std::uint64_t reduce_mod2(std::uint64_t v, const std::vector<std::uint64_t>& basis) {
  for (auto b : basis) {
    const std::uint64_t lead = std::uint64_t{1} << (63 - __builtin_clzll(b));
    if ((v & lead) != 0) v ^= b;
  }
  return v;
}

}  // namespace

LatticeModel::LatticeModel(Data data)
    : name_(std::move(data.name)),
      kind_(data.kind),
      genus_param_(data.genus_param),
      labels_(std::move(data.labels)),
      gram_(std::move(data.gram)),
      groups_(std::move(data.parity_groups)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw StructuralError("model '" + name_ + "' has rank 0");
  if (n > 64) throw StructuralError("model '" + name_ + "' exceeds rank 64");
  if (gram_.size() != n) throw StructuralError("gram has wrong row count");
  for (const auto& row : gram_) {
    if (row.size() != n) throw StructuralError("gram has wrong column count");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (gram_[a][b] != gram_[b][a]) {
        throw StructuralError("gram of '" + name_ + "' is not symmetric at (" + labels_[a] + "," + labels_[b] + ")");
      }
    }
  }

  bool integral = true;
  std::vector<std::vector<std::int64_t>> gi(n, std::vector<std::int64_t>(n));
  for (std::size_t a = 0; a < n && integral; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto& g = gram_[a][b];
      if (!g.is_integer() || !g.numerator().fits_sint_p()) {
        integral = false;
        break;
      }
      gi[a][b] = g.to_int64();
    }
  }
  if (integral) gram_int_ = std::move(gi);

  for (const auto& group : groups_) {
    std::uint64_t bits = 0;
    for (auto k : group) {
      if (k >= n) throw StructuralError("parity group index out of range");
      bits |= std::uint64_t{1} << k;
    }
    bits = reduce_mod2(bits, glue_basis_);
    if (bits == 0) continue;
    // Keep the basis fully reduced so reduce_mod2 is a single pass.
    const std::uint64_t lead = std::uint64_t{1} << (63 - __builtin_clzll(bits));
    for (auto& b : glue_basis_) {
      if ((b & lead) != 0) b ^= bits;
    }
    glue_basis_.push_back(bits);
    std::sort(glue_basis_.begin(), glue_basis_.end(), std::greater<>());
  }

  auto make = [&](const std::vector<Rational>& cs, const std::string& what) {
    if (cs.size() != n) throw StructuralError(what + " has wrong rank");
    auto v = LatticeClass::from_rationals(name_, cs);
    if (!is_member(v)) throw StructuralError(what + " is not a lattice member");
    return v;
  };
  for (auto& [label, cs] : data.named_classes) named_.emplace(label, make(cs, "named class '" + label + "'"));
  for (std::size_t k = 0; k < data.nef.size(); ++k) nef_.push_back(make(data.nef[k], "nef class"));
  for (std::size_t k = 0; k < data.neg2.size(); ++k) {
    auto v = make(data.neg2[k], "(-2)-curve");
    if (square(v) != Rational(-2)) throw StructuralError("known (-2)-curve with square " + square(v).str());
    neg2_.push_back(std::move(v));
  }
  for (const auto& h : nef_) {
    for (const auto& c : neg2_) {
      if (pair(h, c).sign() < 0) throw StructuralError("nef class pairs negatively with a known (-2)-curve");
    }
  }
}

std::optional<std::size_t> LatticeModel::label_index(std::string_view label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k] == label) return k;
  }
  return std::nullopt;
}

LatticeClass LatticeModel::basis_vector(std::size_t k) const {
  std::vector<std::int64_t> d(rank(), 0);
  d.at(k) = 2;
  return LatticeClass(name_, std::move(d));
}

LatticeClass LatticeModel::zero() const { return LatticeClass(name_, std::vector<std::int64_t>(rank(), 0)); }

const LatticeClass& LatticeModel::named(std::string_view label) const {
  auto it = named_.find(std::string(label));
  if (it == named_.end()) throw ParseError("unknown class name '" + std::string(label) + "' in model " + name_);
  return it->second;
}

void LatticeModel::check_class(const LatticeClass& v) const {
  if (v.rank() != rank()) {
    throw StructuralError("class of rank " + std::to_string(v.rank()) + " used with model '" + name_ +
                          "' of rank " + std::to_string(rank()));
  }
  if (v.model_name() != name_) {
    throw StructuralError("class of model '" + v.model_name() + "' used with model '" + name_ + "'");
  }
}

Rational LatticeModel::pair(const LatticeClass& v, const LatticeClass& w) const {
  check_class(v);
  check_class(w);
  const std::size_t n = rank();
  if (gram_int_) {
    __int128 acc = 0;
    for (std::size_t a = 0; a < n; ++a) {
      const auto va = v.doubled(a);
      if (va == 0) continue;
      __int128 row = 0;
      for (std::size_t b = 0; b < n; ++b) row += static_cast<__int128>((*gram_int_)[a][b]) * w.doubled(b);
      acc += row * va;
    }
    if (acc > std::numeric_limits<std::int64_t>::max() || acc < std::numeric_limits<std::int64_t>::min()) {
      throw DomainError("pairing overflow");
    }
    return Rational(static_cast<std::int64_t>(acc), 4);
  }
  mpq_class acc = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (v.doubled(a) == 0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (w.doubled(b) == 0) continue;
      acc += gram_[a][b].raw() * static_cast<long>(v.doubled(a)) * static_cast<long>(w.doubled(b));
    }
  }
  return Rational(mpq_class(acc / 4));
}

bool LatticeModel::is_member(const LatticeClass& v) const {
  check_class(v);
  return reduce_mod2(parity_bits(v.doubled()), glue_basis_) == 0;
}

// ---------------------------------------------------------------- expressions

namespace {

// A parsed sub-expression: either a bare scalar or a linear combination of
// named classes (coefficients over the ambient basis).
struct Linear {
  Rational scalar{1};
  std::optional<std::vector<Rational>> vec;
};

class ExprParser {
 public:
  ExprParser(const LatticeModel& model, std::string_view text) : model_(model), text_(text) {}

  std::vector<Rational> parse() {
    Linear v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (!v.vec) fail("expression has no class term");
    return *v.vec;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("in '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Linear add(Linear a, const Linear& b, int sign) {
    if (a.vec.has_value() != b.vec.has_value()) fail("cannot add a constant to a class");
    if (!a.vec) {
      a.scalar += sign > 0 ? b.scalar : -b.scalar;
      return a;
    }
    for (std::size_t k = 0; k < a.vec->size(); ++k) {
      (*a.vec)[k] += sign > 0 ? (*b.vec)[k] : -(*b.vec)[k];
    }
    return a;
  }

  Linear expr() {
    Linear acc;
    bool first = true;
    for (;;) {
      int sign = 1;
      if (eat('-')) {
        sign = -1;
      } else if (eat('+')) {
        sign = 1;
      } else if (!first) {
        break;
      }
      Linear t = term();
      if (first) {
        acc = sign > 0 ? t : scale(t, Rational(-1));
        first = false;
      } else {
        acc = add(std::move(acc), t, sign);
      }
    }
    return acc;
  }

  static Linear scale(Linear v, const Rational& s) {
    if (!v.vec) {
      v.scalar *= s;
      return v;
    }
    for (auto& c : *v.vec) c *= s;
    return v;
  }

  Linear term() {
    Linear acc = factor();
    for (;;) {
      if (eat('*')) {
        Linear f = factor();
        if (acc.vec && f.vec) fail("product of two classes is not linear");
        if (f.vec) {
          acc = scale(std::move(f), acc.scalar);
        } else {
          acc = scale(std::move(acc), f.scalar);
        }
      } else if (eat('/')) {
        Linear f = factor();
        if (f.vec) fail("division by a class");
        if (f.scalar.sign() == 0) fail("division by zero");
        acc = scale(std::move(acc), Rational(1) / f.scalar);
      } else {
        skip_ws();
        // Implicit product "3E" / "3 E".
        if (pos_ < text_.size() && is_ident_start(text_[pos_]) && !acc.vec) {
          Linear f = factor();
          acc = scale(std::move(f), acc.scalar);
          continue;
        }
        return acc;
      }
    }
  }

  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

  Linear factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Linear v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Linear v;
      v.scalar = Rational::parse(text_.substr(start, pos_ - start));
      return v;
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\'')) {
        ++pos_;
      }
      const auto name = text_.substr(start, pos_ - start);
      const LatticeClass* cls = nullptr;
      try {
        cls = &model_.named(name);
      } catch (const ParseError&) {
        fail("unknown name '" + std::string(name) + "'");
      }
      Linear v;
      v.vec = cls->coeffs();
      return v;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const LatticeModel& model_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LatticeClass LatticeModel::class_from_expr(std::string_view expr) const {
  const auto coeffs = ExprParser(*this, expr).parse();
  return LatticeClass::from_rationals(name_, coeffs);
}

std::string LatticeModel::format(const LatticeClass& v) const {
  check_class(v);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < rank(); ++k) {
    Rational c = v.coeff(k);
    if (c.sign() == 0) continue;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (c.sign() < 0) c = -c;
    if (c != Rational(1)) os << c << (c.is_integer() ? "" : "*");
    os << labels_[k];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------- JSON

nlohmann::json LatticeModel::to_json() const {
  nlohmann::json j;
  j["name"] = name_;
  j["kind"] = to_string(kind_);
  j["genus_param"] = genus_param_;
  j["rank"] = rank();
  j["labels"] = labels_;
  auto g = nlohmann::json::array();
  for (const auto& row : gram_) {
    auto r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(x.str());
    g.push_back(std::move(r));
  }
  j["gram"] = std::move(g);
  j["parity_groups"] = groups_;
  auto named = nlohmann::json::object();
  for (const auto& [label, v] : named_) named[label] = v.to_json();
  j["named_classes"] = std::move(named);
  auto nef = nlohmann::json::array();
  for (const auto& v : nef_) nef.push_back(v.to_json());
  j["nef"] = std::move(nef);
  auto neg2 = nlohmann::json::array();
  for (const auto& v : neg2_) neg2.push_back(v.to_json());
  j["neg2"] = std::move(neg2);
  return j;
}

LatticeModel LatticeModel::from_json(const nlohmann::json& j) {
  try {
    Data d;
    d.name = j.at("name").get<std::string>();
    d.kind = j.contains("kind") ? parse_model_kind(j["kind"].get<std::string>()) : ModelKind::custom;
    d.genus_param = j.value("genus_param", 0);
    d.labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("rank") && j["rank"].get<std::size_t>() != d.labels.size()) {
      throw StructuralError("rank does not match the number of labels");
    }
    auto rationals = [](const nlohmann::json& arr) {
      std::vector<Rational> out;
      for (const auto& x : arr) out.push_back(Rational::parse(x.get<std::string>()));
      return out;
    };
    for (const auto& row : j.at("gram")) d.gram.push_back(rationals(row));
    d.parity_groups = j.at("parity_groups").get<std::vector<std::vector<std::size_t>>>();
    for (const auto& [label, v] : j.at("named_classes").items()) d.named_classes.emplace_back(label, rationals(v));
    for (const auto& v : j.at("nef")) d.nef.push_back(rationals(v));
    for (const auto& v : j.at("neg2")) d.neg2.push_back(rationals(v));
    return LatticeModel(std::move(d));
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed model document: ") + e.what());
  }
}

// ---------------------------------------------------------------- Nikulin models

LatticeModel build_model(ModelKind kind, int genus_param) {
  const bool hyper = kind == ModelKind::standard_hyperelliptic || kind == ModelKind::nonstandard_hyperelliptic;
  const bool nonstd = kind == ModelKind::nonstandard || kind == ModelKind::nonstandard_hyperelliptic;
  if (kind == ModelKind::custom) throw ParameterError("custom models are read from JSON, not built");

  std::int64_t l2 = 0;
  std::int64_t el = 0;
  std::string name;
  if (nonstd) {
    if (genus_param < 1) throw ParameterError("non-standard models need i >= 1, got " + std::to_string(genus_param));
    l2 = 16 * static_cast<std::int64_t>(genus_param) - 4;
    el = 4;
    name = to_string(kind) + "-i" + std::to_string(genus_param);
  } else {
    if (genus_param < 2) {
      throw ParameterError("standard models need g >= 2 (L^2 = 2g-2 > 0), got " + std::to_string(genus_param));
    }
    l2 = 2 * static_cast<std::int64_t>(genus_param) - 2;
    el = 2;
    name = to_string(kind) + "-g" + std::to_string(genus_param);
  }

  LatticeModel::Data d;
  d.name = name;
  d.kind = kind;
  d.genus_param = genus_param;
  d.labels.push_back("L");
  if (hyper) d.labels.push_back("E");
  const std::size_t first_n = d.labels.size();
  for (int j = 1; j <= 8; ++j) d.labels.push_back("N" + std::to_string(j));
  const std::size_t n = d.labels.size();

  d.gram.assign(n, std::vector<Rational>(n, Rational(0)));
  d.gram[0][0] = Rational(l2);
  if (hyper) {
    d.gram[0][1] = d.gram[1][0] = Rational(el);
  }
  for (std::size_t k = first_n; k < n; ++k) d.gram[k][k] = Rational(-2);

  std::vector<std::size_t> all_n;
  for (std::size_t k = first_n; k < n; ++k) all_n.push_back(k);
  d.parity_groups.push_back(all_n);
  if (nonstd) d.parity_groups.push_back({0, first_n, first_n + 1});

  auto unit = [&](std::size_t k) {
    std::vector<Rational> v(n, Rational(0));
    v[k] = Rational(1);
    return v;
  };
  for (std::size_t k = 0; k < n; ++k) d.named_classes.emplace_back(d.labels[k], unit(k));
  std::vector<Rational> e(n, Rational(0));
  for (auto k : all_n) e[k] = Rational(1, 2);
  d.named_classes.emplace_back("e", e);
  if (nonstd) {
    std::vector<Rational> r(n, Rational(0));
    r[0] = Rational(1, 2);
    r[first_n] = r[first_n + 1] = Rational(-1, 2);
    d.named_classes.emplace_back("R", r);
    std::vector<Rational> rp(n, Rational(0));
    rp[0] = Rational(1, 2);
    for (std::size_t k = first_n + 2; k < n; ++k) rp[k] = Rational(-1, 2);
    d.named_classes.emplace_back("R'", rp);
  }

  d.nef.push_back(unit(0));
  if (hyper) d.nef.push_back(unit(1));
  for (auto k : all_n) d.neg2.push_back(unit(k));
  return LatticeModel(std::move(d));
}

}  // namespace prym
