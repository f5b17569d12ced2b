#pragma once

#include <string>
#include <vector>

#include "mshuffle/errors.hpp"

namespace mshuffle {

/// C^{n|m} with a Z2 grading. The standard ordering puts the n even labels
/// first; other orderings arise for intermediate spaces of embeddings.
class GradedSpace {
 public:
  GradedSpace(int n, int m);
  /// Arbitrary grading vector of +1/-1 entries.
  explicit GradedSpace(std::vector<int> grading);

  int n() const { return n_; }
  int m() const { return m_; }
  int dim() const { return static_cast<int>(eps_.size()); }
  /// Grading of the 1-based label i.
  int eps(int i) const {
    check_label(i);
    return eps_[i - 1];
  }
  const std::vector<int>& grading() const { return eps_; }
  bool is_standard() const;
  void check_label(int i) const {
    if (i < 1 || i > dim())
      throw LabelOutOfRange("label " + std::to_string(i) + " outside 1.." + std::to_string(dim()));
  }

  bool operator==(const GradedSpace& o) const { return eps_ == o.eps_; }
  bool operator!=(const GradedSpace& o) const { return !(*this == o); }

  std::string str() const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<int> eps_;
};

}  // namespace mshuffle
