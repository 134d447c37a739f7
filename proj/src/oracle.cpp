#include <algorithm>
#include <map>

#include "chowring/chow.hpp"

namespace chowring {

namespace {

using WorkRow = std::map<std::size_t, Rational>;

}  // namespace

DegreeOracle::DegreeOracle(int d) : d_(d), ambient_(Ambient::cube(d)) {
  if (d < 1 || d > kOracleMaxDimension)
    throw LimitError("the linear-algebra oracle supports 1 <= d <= " + std::to_string(kOracleMaxDimension));
  basis_ = monomial_basis(ambient_, d + 1, kDefaultBasisLimit);
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);

  auto to_row = [&](const Cycle& c) {
    SparseRow row;
    for (const auto& [m, q] : c.terms()) row.emplace_back(index_.at(m), q);
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return row;
  };

  for (const auto& r : relation_generators(ambient_, d + 1)) add_constraint(to_row(r), 0);

  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Monomial& m = basis_[i];
    if (!m.is_proper()) continue;
    const auto support = m.support();
    add_constraint(SparseRow{{i, Rational(1)}}, ambient_.is_simplex(support) ? 1 : 0);
  }
}

void DegreeOracle::reduce(SparseRow& row, Rational& rhs) const {
  WorkRow work(row.begin(), row.end());
  auto it = work.begin();
  while (it != work.end()) {
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    const Rational factor = it->second;  // pivot rows are normalized to a leading 1
    for (const auto& [c, v] : p->second.row) {
      auto [w, inserted] = work.try_emplace(c, 0);
      w->second -= factor * v;
      if (w->second == 0) work.erase(w);
    }
    rhs -= factor * p->second.rhs;
    it = work.upper_bound(col);
  }
  row.assign(work.begin(), work.end());
}

void DegreeOracle::add_constraint(SparseRow row, Rational rhs) {
  reduce(row, rhs);
  if (row.empty()) {
    if (rhs != 0)
      throw std::logic_error("inconsistent local degree constraints on I^" + std::to_string(d_) +
                             ": the relations force a normalized chain to vanish");
    return;
  }
  const Rational lead = row.front().second;
  for (auto& [c, v] : row) v /= lead;
  rhs /= lead;
  const std::size_t col = row.front().first;
  pivots_.emplace(col, Pivot{std::move(row), std::move(rhs)});
}

Rational DegreeOracle::evaluate(const Cycle& a) const {
  if (!(a.ambient() == ambient_)) throw AmbientError("oracle is set up for I^" + std::to_string(d_));
  if (a.is_zero()) return 0;
  if (a.degree() != d_ + 1) throw DegreeError("oracle evaluates degree " + std::to_string(d_ + 1) + " only");
  SparseRow row;
  for (const auto& [m, q] : a.terms()) row.emplace_back(index_.at(m), q);
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Rational rhs = 0;
  reduce(row, rhs);
  if (!row.empty()) throw std::logic_error("local degree is not determined by the constraints");
  return -rhs;
}

Rational oracle_degree(const Cycle& a) {
  if (!a.ambient().is_cube()) throw AmbientError("oracle_degree needs a cycle on a standard cube");
  return DegreeOracle(a.ambient().dimension()).evaluate(a);
}

}  // namespace chowring
