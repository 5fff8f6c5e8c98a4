#include "valtoric/order.hpp"

#include <sstream>

namespace valtoric {

ValueVec vv_zero(int r) { return ValueVec(static_cast<size_t>(r), mpq_class(0)); }

ValueVec vv_add(const ValueVec& u, const ValueVec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("value vectors: dimension mismatch");
  ValueVec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
  return w;
}

ValueVec vv_sub(const ValueVec& u, const ValueVec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("value vectors: dimension mismatch");
  ValueVec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] - v[i];
  return w;
}

ValueVec vv_scale(const mpq_class& c, const ValueVec& v) {
  ValueVec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = c * v[i];
  return w;
}

bool vv_is_integral(const ValueVec& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

std::string to_string(const ValueVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

int rational_rank(std::vector<std::vector<mpq_class>> m) {
  if (m.empty()) return 0;
  const size_t cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      mpq_class f = m[i][col] / m[row][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    ++row;
  }
  return static_cast<int>(row);
}

MonomialOrder::MonomialOrder(int ambient_rank, std::vector<std::vector<QuadExt>> rows)
    : r_(ambient_rank), rows_(std::move(rows)) {
  if (r_ <= 0) throw std::invalid_argument("order: ambient rank must be positive");
  if (rows_.empty()) throw std::invalid_argument("order: needs at least one row");
  unsigned long D = 0;
  for (const auto& row : rows_) {
    if (static_cast<int>(row.size()) != r_)
      throw std::invalid_argument("order: row length differs from ambient rank");
    for (const auto& c : row) {
      if (c.D != 0) {
        if (D != 0 && D != c.D) throw std::invalid_argument("order: mixed radicands");
        D = c.D;
      }
    }
  }
  // Kernel triviality over Q: the rational and sqrt(D) parts of the rows
  // must jointly have full column rank.
  std::vector<std::vector<mpq_class>> m;
  for (const auto& row : rows_) {
    std::vector<mpq_class> ra(r_), rb(r_);
    bool has_b = false;
    for (int j = 0; j < r_; ++j) {
      ra[j] = row[j].a;
      rb[j] = row[j].b;
      if (row[j].b != 0) has_b = true;
    }
    m.push_back(std::move(ra));
    if (has_b) m.push_back(std::move(rb));
  }
  if (rational_rank(m) != r_)
    throw std::invalid_argument("order: rows have nontrivial rational kernel (order not total)");
}

QuadExt MonomialOrder::row_value(int k, const ValueVec& v) const {
  if (static_cast<int>(v.size()) != r_) throw std::invalid_argument("order: dimension mismatch");
  const auto& row = rows_[static_cast<size_t>(k)];
  mpq_class a = 0, b = 0;
  unsigned long D = 0;
  for (int j = 0; j < r_; ++j) {
    a += row[j].a * v[j];
    b += row[j].b * v[j];
    if (row[j].D != 0) D = row[j].D;
  }
  if (b == 0) return QuadExt(a);
  return QuadExt(a, b, D);
}

Cmp MonomialOrder::cmp(const ValueVec& u, const ValueVec& v) const {
  ValueVec d = vv_sub(u, v);
  for (int k = 0; k < height(); ++k) {
    int s = row_value(k, d).sign();
    if (s < 0) return Cmp::LT;
    if (s > 0) return Cmp::GT;
  }
  return Cmp::EQ;
}

bool MonomialOrder::positive(const ValueVec& v) const { return cmp(v, vv_zero(r_)) == Cmp::GT; }
bool MonomialOrder::negative(const ValueVec& v) const { return cmp(v, vv_zero(r_)) == Cmp::LT; }
bool MonomialOrder::is_zero_value(const ValueVec& v) const {
  return cmp(v, vv_zero(r_)) == Cmp::EQ;
}

int MonomialOrder::convex_level(const ValueVec& v) const {
  int k = 0;
  while (k < height() && row_value(k, v).sign() == 0) ++k;
  return k;
}

MonomialOrder MonomialOrder::standard_rank1() {
  return MonomialOrder(1, {{QuadExt(mpq_class(1))}});
}

MonomialOrder MonomialOrder::lex(int r) {
  std::vector<std::vector<QuadExt>> rows;
  for (int k = 0; k < r; ++k) {
    std::vector<QuadExt> row(static_cast<size_t>(r), QuadExt(mpq_class(0)));
    row[static_cast<size_t>(k)] = QuadExt(mpq_class(1));
    rows.push_back(std::move(row));
  }
  return MonomialOrder(r, std::move(rows));
}

}  // namespace valtoric
