#pragma once

#include <cstddef>
#include <vector>

#include "prym/lattice.hpp"

namespace prym::detail {

// Splits the ambient basis into coordinates that are known (-2)-curves
// orthogonal to everything else ("exceptional") and the rest ("positive").
struct Structure {
  std::vector<std::size_t> positive;
  std::vector<std::size_t> exceptional;
};

inline Structure analyze(const LatticeModel& model) {
  Structure st;
  for (std::size_t k = 0; k < model.rank(); ++k) {
    bool exceptional = model.gram(k, k) == Rational(-2);
    for (std::size_t m = 0; exceptional && m < model.rank(); ++m) {
      if (m != k && model.gram(k, m).sign() != 0) exceptional = false;
    }
    if (exceptional) {
      const LatticeClass v = model.basis_vector(k);
      bool known = false;
      for (const auto& n : model.known_neg2_curves()) known = known || n == v;
      exceptional = known;
    }
    (exceptional ? st.exceptional : st.positive).push_back(k);
  }
  return st;
}

}  // namespace prym::detail
