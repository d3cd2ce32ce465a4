#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arboreal/rational.hpp"

namespace arboreal {

// Symmetric exact-rational distance over an ordered label list; zero exactly
// on the diagonal, strictly positive elsewhere.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const { return labels_; }
  size_t size() const { return labels_.size(); }

  const Rational& at(size_t i, size_t j) const { return entries_[i * size() + j]; }
  const Rational& at(const std::string& x, const std::string& y) const;
  void set(size_t i, size_t j, const Rational& value);

  int index_of(const std::string& label) const;  // -1 when absent

  // Throws std::invalid_argument when symmetry/diagonal/positivity fails.
  void check_valid() const;

 private:
  std::vector<std::string> labels_;
  std::vector<Rational> entries_;
};

// Symmetric matrix whose off-diagonal entries are strictly positive rationals
// or infinity; infinity is a distinct sentinel (disengaged optional), never a
// large-number encoding.
class PartialDistance {
 public:
  using Entry = std::optional<Rational>;  // nullopt means infinity

  explicit PartialDistance(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const { return labels_; }
  size_t size() const { return labels_.size(); }

  const Entry& at(size_t i, size_t j) const { return entries_[i * size() + j]; }
  const Entry& at(const std::string& x, const std::string& y) const;
  bool finite(size_t i, size_t j) const { return at(i, j).has_value(); }
  void set(size_t i, size_t j, const Entry& value);

  int index_of(const std::string& label) const;

  bool all_finite() const;
  void check_valid() const;

  PartialDistance restricted(const std::vector<std::string>& keep) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Entry> entries_;
};

PartialDistance to_partial(const DistanceMatrix& d);

// Narrows an all-finite partial distance; nullopt if any entry is infinite.
std::optional<DistanceMatrix> to_distance_matrix(const PartialDistance& d);

}  // namespace arboreal
