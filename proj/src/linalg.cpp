#include "khtangle/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "khtangle/parallel.hpp"

namespace khtangle {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  DenseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  DenseMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

void DenseMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}
void DenseMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}
void DenseMatrix::add_row(std::size_t dst, std::size_t src, const mpz_class& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
}
void DenseMatrix::add_col(std::size_t dst, std::size_t src, const mpz_class& f) {
  if (f == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
}
void DenseMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

// ---------------------------------------------------------------------------

namespace {

// Row operations on D are mirrored on U (left) and U_inv (right, inverse op);
// column operations on D on V (right) and V_inv (left, inverse op).
struct SnfWork {
  DenseMatrix D, U, Ui, V, Vi;
  void swap_rows(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    U.swap_rows(a, b);
    Ui.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
    Vi.swap_rows(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const mpz_class& f) {
    D.add_row(dst, src, f);
    U.add_row(dst, src, f);
    Ui.add_col(src, dst, -f);
  }
  void add_col(std::size_t dst, std::size_t src, const mpz_class& f) {
    D.add_col(dst, src, f);
    V.add_col(dst, src, f);
    Vi.add_row(src, dst, -f);
  }
  void negate_row(std::size_t r) {
    D.negate_row(r);
    U.negate_row(r);
    for (std::size_t i = 0; i < Ui.rows(); ++i) Ui(i, r) = -Ui(i, r);
  }
};

}  // namespace

SNFResult smith_normal_form(const DenseMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SnfWork w{A, DenseMatrix::identity(m), DenseMatrix::identity(m), DenseMatrix::identity(n), DenseMatrix::identity(n)};
  std::size_t t = 0;
  while (t < m && t < n) {
    // smallest nonzero entry in the trailing block
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (w.D(i, j) != 0 && (pi == m || abs(w.D(i, j)) < abs(w.D(pi, pj)))) pi = i, pj = j;
    if (pi == m) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (w.D(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), w.D(i, t).get_mpz_t(), w.D(t, t).get_mpz_t());
        w.add_row(i, t, -q);
        if (w.D(i, t) != 0) {
          clean = false;
          w.swap_rows(t, i);
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.D(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), w.D(t, j).get_mpz_t(), w.D(t, t).get_mpz_t());
        w.add_col(j, t, -q);
        if (w.D(t, j) != 0) {
          clean = false;
          w.swap_cols(t, j);
        }
      }
      if (!clean) continue;
      // divisibility of the trailing block by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (w.D(i, j) % w.D(t, t) != 0) {
            w.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (w.D(t, t) < 0) w.negate_row(t);
    ++t;
  }
  SNFResult r;
  r.rank = t;
  for (std::size_t k = 0; k < t; ++k) r.invariant_factors.push_back(w.D(k, k));
  r.U = std::move(w.U);
  r.U_inv = std::move(w.Ui);
  r.V = std::move(w.V);
  r.V_inv = std::move(w.Vi);
  r.D = std::move(w.D);
  return r;
}

bool verify_snf(const DenseMatrix& A, const SNFResult& r) {
  const std::size_t m = A.rows(), n = A.cols();
  if (r.U * A * r.V != r.D) return false;
  if (r.U * r.U_inv != DenseMatrix::identity(m) || r.V * r.V_inv != DenseMatrix::identity(n)) return false;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && r.D(i, j) != 0) return false;
      if (i == j && i >= r.rank && r.D(i, j) != 0) return false;
    }
  for (std::size_t k = 0; k < r.rank; ++k) {
    if (r.D(k, k) <= 0) return false;
    if (k + 1 < r.rank && r.D(k + 1, k + 1) % r.D(k, k) != 0) return false;
  }
  return true;
}

DenseMatrix SparseMatrix::dense() const {
  DenseMatrix d(rows, cols);
  for (const auto& [i, j, v] : entries) d(i, j) += v;
  return d;
}

std::vector<mpz_class> invariant_factors(const SparseMatrix& A) {
  std::vector<std::map<std::size_t, mpz_class>> rows(A.rows);
  std::vector<std::set<std::size_t>> cols(A.cols);
  for (const auto& [i, j, v] : A.entries) {
    if (v == 0) continue;
    rows[i][j] += v;
  }
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (auto it = rows[i].begin(); it != rows[i].end();) {
      if (it->second == 0) {
        it = rows[i].erase(it);
      } else {
        cols[it->first].insert(i);
        ++it;
      }
    }
  }
  std::size_t units = 0;
  std::vector<char> row_alive(A.rows, 1), col_alive(A.cols, 1);
  while (true) {
    std::size_t best_r = A.rows, best_c = 0, best_cost = ~std::size_t{0};
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (!row_alive[i]) continue;
      for (const auto& [j, v] : rows[i]) {
        if (v != 1 && v != -1) continue;
        const std::size_t cost = (rows[i].size() - 1) * (cols[j].size() - 1);
        if (cost < best_cost) best_cost = cost, best_r = i, best_c = j;
        if (cost == 0) break;
      }
      if (best_cost == 0) break;
    }
    if (best_r == A.rows) break;
    const std::size_t r = best_r, c = best_c;
    const mpz_class u = rows[r].at(c);
    const std::vector<std::size_t> others(cols[c].begin(), cols[c].end());
    for (std::size_t r2 : others) {
      if (r2 == r) continue;
      const mpz_class f = rows[r2].at(c) * u;
      for (const auto& [j, v] : rows[r]) {
        mpz_class& slot = rows[r2][j];
        slot -= f * v;
        if (slot == 0) {
          rows[r2].erase(j);
          cols[j].erase(r2);
        } else {
          cols[j].insert(r2);
        }
      }
    }
    for (const auto& [j, v] : rows[r]) cols[j].erase(r);
    rows[r].clear();
    row_alive[r] = 0;
    col_alive[c] = 0;
    ++units;
  }
  std::vector<std::size_t> live_rows, live_cols;
  for (std::size_t i = 0; i < A.rows; ++i)
    if (row_alive[i] && !rows[i].empty()) live_rows.push_back(i);
  for (std::size_t j = 0; j < A.cols; ++j)
    if (col_alive[j] && !cols[j].empty()) live_cols.push_back(j);
  std::vector<mpz_class> out(units, 1);
  if (!live_rows.empty()) {
    std::map<std::size_t, std::size_t> col_pos;
    for (std::size_t k = 0; k < live_cols.size(); ++k) col_pos[live_cols[k]] = k;
    DenseMatrix d(live_rows.size(), live_cols.size());
    for (std::size_t k = 0; k < live_rows.size(); ++k)
      for (const auto& [j, v] : rows[live_rows[k]]) d(k, col_pos.at(j)) = v;
    for (auto& f : smith_normal_form(d).invariant_factors) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

BigradedHomology homology(const GradedComplex& C, int jobs) {
  std::map<std::pair<int, int>, std::vector<std::size_t>> by_grade;
  for (std::size_t g = 0; g < C.grading.size(); ++g) by_grade[C.grading[g]].push_back(g);
  std::vector<std::size_t> local(C.grading.size());
  for (const auto& [_, gens] : by_grade)
    for (std::size_t k = 0; k < gens.size(); ++k) local[gens[k]] = k;
  // d_{h,q}: C_{h,q} -> C_{h-1,q}, keyed by source grading
  std::map<std::pair<int, int>, SparseMatrix> d;
  for (const auto& [grade, gens] : by_grade) {
    auto& m = d[grade];
    m.cols = gens.size();
    auto it = by_grade.find({grade.first - 1, grade.second});
    m.rows = it == by_grade.end() ? 0 : it->second.size();
  }
  for (const auto& [t, s, v] : C.differential) {
    if (v == 0) continue;
    const auto gs = C.grading[s], gt = C.grading[t];
    if (gt.first != gs.first - 1 || gt.second != gs.second) throw std::invalid_argument("homology: differential is not homogeneous");
    d[gs].entries.emplace_back(local[t], local[s], v);
  }
  std::vector<std::pair<int, int>> keys;
  for (const auto& [k, _] : d) keys.push_back(k);
  std::map<std::pair<int, int>, std::vector<mpz_class>> factors;
  std::mutex mu;
  parallel_for(keys.size(), jobs, [&](std::size_t k) {
    auto f = invariant_factors(d.at(keys[k]));
    std::lock_guard lock(mu);
    factors[keys[k]] = std::move(f);
  });
  BigradedHomology H;
  for (const auto& [grade, gens] : by_grade) {
    const std::size_t out_rank = factors[grade].size();
    const auto above = factors.find({grade.first + 1, grade.second});
    HomologyGroup g;
    const std::size_t in_rank = above == factors.end() ? 0 : above->second.size();
    g.free_rank = gens.size() - out_rank - in_rank;
    if (above != factors.end())
      for (const auto& f : above->second)
        if (f > 1) g.torsion.push_back(f);
    if (!g.zero()) H[grade] = std::move(g);
  }
  return H;
}

std::optional<std::string> check_graded_complex(const GradedComplex& C) {
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> out(C.grading.size());
  for (const auto& [t, s, v] : C.differential) {
    if (v == 0) continue;
    const auto gs = C.grading[s], gt = C.grading[t];
    if (gt.first != gs.first - 1)
      return "differential entry " + std::to_string(s) + " -> " + std::to_string(t) + " does not lower h by one";
    if (gt.second != gs.second)
      return "differential entry " + std::to_string(s) + " -> " + std::to_string(t) + " changes q";
    out[s].emplace_back(t, v);
  }
  for (std::size_t s = 0; s < out.size(); ++s) {
    std::map<std::size_t, std::int64_t> dd;
    for (auto [t, v] : out[s])
      for (auto [u, w] : out[t]) dd[u] += v * w;
    for (auto [u, c] : dd)
      if (c != 0) return "d^2 is nonzero on generator " + std::to_string(s);
  }
  return std::nullopt;
}

std::string format_group(const HomologyGroup& g) {
  std::ostringstream os;
  bool first = true;
  if (g.free_rank > 0) {
    os << "Z";
    if (g.free_rank > 1) os << "^" << g.free_rank;
    first = false;
  }
  std::map<mpz_class, int> counts;
  for (const auto& t : g.torsion) counts[t]++;
  for (const auto& [t, c] : counts) {
    if (!first) os << " + ";
    os << "(Z/" << t.get_str() << ")";
    if (c > 1) os << "^" << c;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::string format_homology(const BigradedHomology& H) {
  std::ostringstream os;
  for (const auto& [grade, g] : H) os << grade.first << ' ' << grade.second << ' ' << format_group(g) << '\n';
  return os.str();
}

std::optional<std::string> compare_homology(const BigradedHomology& A, const BigradedHomology& B) {
  std::set<std::pair<int, int>> keys;
  for (const auto& [k, _] : A) keys.insert(k);
  for (const auto& [k, _] : B) keys.insert(k);
  static const HomologyGroup zero;
  for (const auto& k : keys) {
    const auto ia = A.find(k), ib = B.find(k);
    const HomologyGroup& ga = ia == A.end() ? zero : ia->second;
    const HomologyGroup& gb = ib == B.end() ? zero : ib->second;
    if (!(ga == gb))
      return "(h,q)=(" + std::to_string(k.first) + "," + std::to_string(k.second) + "): " + format_group(ga) +
             " vs " + format_group(gb);
  }
  return std::nullopt;
}

std::map<int, long> euler_characteristic(const BigradedHomology& H) {
  std::map<int, long> chi;
  for (const auto& [grade, g] : H) chi[grade.second] += (grade.first % 2 == 0 ? 1 : -1) * static_cast<long>(g.free_rank);
  std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
  return chi;
}

std::map<int, long> euler_characteristic(const GradedComplex& C) {
  std::map<int, long> chi;
  for (const auto& [h, q] : C.grading) chi[q] += (h % 2 == 0 ? 1 : -1);
  std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
  return chi;
}

}  // namespace khtangle
