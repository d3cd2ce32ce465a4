#include "arboreal/distance.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace arboreal {

namespace {

void check_labels(const std::vector<std::string>& labels) {
  if (labels.size() < 2) throw std::invalid_argument("need at least two labels");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw std::invalid_argument("duplicate label");
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), entries_(labels_.size() * labels_.size()) {
  check_labels(labels_);
}

const Rational& DistanceMatrix::at(const std::string& x,
                                   const std::string& y) const {
  int i = index_of(x), j = index_of(y);
  if (i < 0 || j < 0) throw std::invalid_argument("unknown label");
  return at(i, j);
}

void DistanceMatrix::set(size_t i, size_t j, const Rational& value) {
  entries_[i * size() + j] = value;
  entries_[j * size() + i] = value;
}

int DistanceMatrix::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

void DistanceMatrix::check_valid() const {
  for (size_t i = 0; i < size(); ++i) {
    if (!at(i, i).is_zero()) throw std::invalid_argument("nonzero diagonal");
    for (size_t j = i + 1; j < size(); ++j) {
      if (at(i, j) != at(j, i)) throw std::invalid_argument("asymmetric entry");
      if (!at(i, j).is_positive())
        throw std::invalid_argument("nonpositive off-diagonal entry");
    }
  }
}

PartialDistance::PartialDistance(std::vector<std::string> labels)
    : labels_(std::move(labels)), entries_(labels_.size() * labels_.size()) {
  check_labels(labels_);
  for (size_t i = 0; i < size(); ++i) entries_[i * size() + i] = Rational(0);
}

const PartialDistance::Entry& PartialDistance::at(const std::string& x,
                                                  const std::string& y) const {
  int i = index_of(x), j = index_of(y);
  if (i < 0 || j < 0) throw std::invalid_argument("unknown label");
  return at(i, j);
}

void PartialDistance::set(size_t i, size_t j, const Entry& value) {
  entries_[i * size() + j] = value;
  entries_[j * size() + i] = value;
}

int PartialDistance::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

bool PartialDistance::all_finite() const {
  for (size_t i = 0; i < size(); ++i)
    for (size_t j = i + 1; j < size(); ++j)
      if (!finite(i, j)) return false;
  return true;
}

void PartialDistance::check_valid() const {
  for (size_t i = 0; i < size(); ++i) {
    const Entry& d = at(i, i);
    if (!d.has_value() || !d->is_zero())
      throw std::invalid_argument("nonzero diagonal");
    for (size_t j = i + 1; j < size(); ++j) {
      if (at(i, j) != at(j, i)) throw std::invalid_argument("asymmetric entry");
      if (at(i, j).has_value() && !at(i, j)->is_positive())
        throw std::invalid_argument("nonpositive off-diagonal entry");
    }
  }
}

PartialDistance PartialDistance::restricted(
    const std::vector<std::string>& keep) const {
  PartialDistance r(keep);
  for (size_t i = 0; i < keep.size(); ++i) {
    int a = index_of(keep[i]);
    if (a < 0) throw std::invalid_argument("unknown label");
    for (size_t j = i + 1; j < keep.size(); ++j) {
      int b = index_of(keep[j]);
      if (b < 0) throw std::invalid_argument("unknown label");
      r.set(i, j, at(a, b));
    }
  }
  return r;
}

PartialDistance to_partial(const DistanceMatrix& d) {
  PartialDistance p(d.labels());
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j) p.set(i, j, d.at(i, j));
  return p;
}

std::optional<DistanceMatrix> to_distance_matrix(const PartialDistance& d) {
  if (!d.all_finite()) return std::nullopt;
  DistanceMatrix m(d.labels());
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j) m.set(i, j, *d.at(i, j));
  return m;
}

}  // namespace arboreal
