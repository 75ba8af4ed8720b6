#include "mzv/real.hpp"

#include <cstdio>
#include <vector>

namespace mzv {

std::string Real::to_string(int digits) const {
  if (digits < 1) digits = 1;
  // %.*Re prints `digits` digits after the point, i.e. digits+1 significant
  int frac = digits - 1;
  int need = mpfr_snprintf(nullptr, 0, "%.*Re", frac, v_);
  std::vector<char> buf(static_cast<size_t>(need) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", frac, v_);
  return std::string(buf.data());
}

}  // namespace mzv
