#include "mshuffle/graded_space.hpp"

namespace mshuffle {

GradedSpace::GradedSpace(int n, int m) : n_(n), m_(m) {
  if (n < 0 || m < 0 || n + m < 1) throw ConfigError("graded space needs n, m >= 0 and n + m >= 1");
  eps_.assign(n, 1);
  eps_.insert(eps_.end(), m, -1);
}

GradedSpace::GradedSpace(std::vector<int> grading) : eps_(std::move(grading)) {
  if (eps_.empty()) throw ConfigError("graded space needs at least one label");
  for (int e : eps_) {
    if (e == 1)
      ++n_;
    else if (e == -1)
      ++m_;
    else
      throw GradingMismatch("grading entries must be +1 or -1");
  }
}

bool GradedSpace::is_standard() const {
  for (int i = 0; i < dim(); ++i) {
    if (eps_[i] != (i < n_ ? 1 : -1)) return false;
  }
  return true;
}

std::string GradedSpace::str() const {
  std::string out = "(";
  for (int e : eps_) out += e > 0 ? '+' : '-';
  return out + ")";
}

}  // namespace mshuffle
