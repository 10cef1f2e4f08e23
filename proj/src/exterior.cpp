#include "oddext/exterior.hpp"

#include <algorithm>
#include <sstream>

namespace oddext {

IndexSet::IndexSet(int n, std::vector<int> indices) : n_(n), indices_(std::move(indices)) {
  if (n < 0) throw InvalidArgument("IndexSet: negative ambient dimension");
  for (std::size_t p = 0; p < indices_.size(); ++p) {
    const int i = indices_[p];
    if (i < 1 || i > n) throw InvalidArgument("IndexSet: index " + std::to_string(i) + " outside [1, n]");
    if (p > 0 && indices_[p - 1] >= i) throw InvalidArgument("IndexSet: indices not strictly increasing");
  }
}

IndexSet IndexSet::full(int n) {
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  return IndexSet(n, std::move(all));
}

bool IndexSet::contains(int i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

IndexSet IndexSet::complement() const {
  IndexSet out;
  out.n_ = n_;
  for (int i = 1; i <= n_; ++i)
    if (!contains(i)) out.indices_.push_back(i);
  return out;
}

IndexSet IndexSet::without_position(int pos) const {
  IndexSet out = *this;
  out.indices_.erase(out.indices_.begin() + pos);
  return out;
}

std::vector<IndexSet> IndexSet::all_of_degree(int n, int q) {
  std::vector<IndexSet> out;
  if (q < 0 || q > n) return out;
  std::vector<int> current(static_cast<std::size_t>(q));
  for (int p = 0; p < q; ++p) current[p] = p + 1;
  while (true) {
    out.emplace_back(n, current);
    int p = q - 1;
    while (p >= 0 && current[p] == n - q + p + 1) --p;
    if (p < 0) break;
    ++current[p];
    for (int r = p + 1; r < q; ++r) current[r] = current[r - 1] + 1;
  }
  return out;
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t p = 0; p < indices_.size(); ++p) os << (p ? "," : "") << indices_[p];
  os << ')';
  return os.str();
}

MergeResult merge_sign(const IndexSet& a, const IndexSet& b) {
  if (a.n() != b.n()) throw DimensionMismatch("merge_sign: ambient dimension mismatch");
  auto ia = a.indices();
  auto ib = b.indices();
  std::vector<int> merged;
  merged.reserve(ia.size() + ib.size());
  // Each pair (i in a, j in b) with i > j is one inversion of the concatenation.
  long inversions = 0;
  std::size_t p = 0, r = 0;
  while (p < ia.size() || r < ib.size()) {
    if (r == ib.size() || (p < ia.size() && ia[p] < ib[r])) {
      merged.push_back(ia[p++]);
    } else if (p == ia.size() || ib[r] < ia[p]) {
      inversions += static_cast<long>(ia.size() - p);
      merged.push_back(ib[r++]);
    } else {
      return {0, IndexSet::empty(a.n())};
    }
  }
  return {inversions % 2 == 0 ? 1 : -1, IndexSet(a.n(), std::move(merged))};
}

long long binomial(int n, int q) {
  if (q < 0 || q > n) return 0;
  long long out = 1;
  for (int i = 1; i <= q; ++i) out = out * (n - q + i) / i;
  return out;
}

} // namespace oddext
