#include "tautring4/linalg.hpp"

#include <algorithm>

namespace tautring4 {

namespace {

void make_primitive(ZRow& r) {
  if (r.empty()) return;
  Z g = 0;
  for (auto& [c, x] : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (r.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, x] : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// a*r - b*p, both sorted
ZRow combine(const Z& a, const ZRow& r, const Z& b, const ZRow& p) {
  ZRow out;
  out.reserve(r.size() + p.size());
  size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back({r[i].first, a * r[i].second});
      ++i;
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.push_back({p[j].first, -b * p[j].second});
      ++j;
    } else {
      Z x = a * r[i].second - b * p[j].second;
      if (x != 0) out.push_back({r[i].first, x});
      ++i, ++j;
    }
  }
  return out;
}

// eliminate column c of r using p (p's entry at c is nonzero)
void eliminate(ZRow& r, const ZRow& p, int c) {
  auto it = std::lower_bound(r.begin(), r.end(), c, [](auto& e, int k) { return e.first < k; });
  if (it == r.end() || it->first != c) return;
  auto jt = std::lower_bound(p.begin(), p.end(), c, [](auto& e, int k) { return e.first < k; });
  Z a = jt->second, b = it->second;
  Z g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  a /= g;
  b /= g;
  r = combine(a, r, b, p);
  make_primitive(r);
}

size_t bits(const ZRow& r) {
  size_t s = 0;
  for (auto& [c, x] : r) s += mpz_sizeinbase(x.get_mpz_t(), 2);
  return s;
}

}  // namespace

ZRow to_primitive(const QVec& v) {
  ZRow r;
  Z l = 1;
  for (auto& [c, x] : v)
    if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  for (auto& [c, x] : v)
    if (x != 0) r.push_back({c, Z(x.get_num() * (l / x.get_den()))});
  make_primitive(r);
  return r;
}

bool Echelon::insert(const QVec& v) {
  ZRow r = to_primitive(v);
  while (!r.empty()) {
    int c = r.front().first;
    auto it = rows_.find(c);
    if (it == rows_.end()) {
      rows_.emplace(c, std::move(r));
      return true;
    }
    eliminate(r, it->second, c);
  }
  return false;
}

QVec Echelon::reduce(const QVec& v) const {
  QVec w;
  for (auto& [c, x] : v)
    if (x != 0) w[c] = x;
  auto it = w.begin();
  while (it != w.end()) {
    auto pr = rows_.find(it->first);
    if (pr == rows_.end()) {
      ++it;
      continue;
    }
    int c = it->first;
    const ZRow& p = pr->second;
    Q f = it->second / Q(p.front().second);
    for (auto& [k, y] : p) {
      Q& z = w[k];
      z -= f * Q(y);
    }
    for (auto jt = w.begin(); jt != w.end();)
      jt = jt->second == 0 ? w.erase(jt) : std::next(jt);
    it = w.upper_bound(c);
  }
  return w;
}

std::vector<int> Echelon::pivots() const {
  std::vector<int> p;
  for (auto& [c, r] : rows_) p.push_back(c);
  return p;
}

void RationalMatrix::set(int r, int c, const Q& x) {
  if (r < 0 || r >= nr_ || c < 0 || c >= nc_) throw std::out_of_range("matrix index");
  if (x == 0) data_[r].erase(c);
  else data_[r][c] = x;
}

Q RationalMatrix::get(int r, int c) const {
  auto it = data_.at(r).find(c);
  return it == data_[r].end() ? Q(0) : it->second;
}

void RationalMatrix::append_row(const QVec& v) {
  QVec w;
  for (auto& [c, x] : v) {
    if (c < 0 || c >= nc_) throw std::out_of_range("matrix column");
    if (x != 0) w[c] = x;
  }
  data_.push_back(std::move(w));
  ++nr_;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(nc_, nr_);
  for (int r = 0; r < nr_; ++r)
    for (auto& [c, x] : data_[r]) t.data_[c][r] = x;
  return t;
}

RationalMatrix RationalMatrix::block(const std::vector<int>& rs, const std::vector<int>& cs) const {
  std::map<int, int> cmap;
  for (size_t j = 0; j < cs.size(); ++j) cmap[cs[j]] = static_cast<int>(j);
  RationalMatrix b(static_cast<int>(rs.size()), static_cast<int>(cs.size()));
  for (size_t i = 0; i < rs.size(); ++i)
    for (auto& [c, x] : data_.at(rs[i])) {
      auto it = cmap.find(c);
      if (it != cmap.end()) b.data_[i][it->second] = x;
    }
  return b;
}

bool RationalMatrix::is_zero() const {
  for (auto& r : data_)
    if (!r.empty()) return false;
  return true;
}

std::vector<std::pair<int, ZRow>> rref(std::vector<QVec> rows) {
  std::vector<ZRow> pool;
  for (auto& v : rows) {
    ZRow r = to_primitive(v);
    if (!r.empty()) pool.push_back(std::move(r));
  }
  std::vector<std::pair<int, ZRow>> piv;
  while (!pool.empty()) {
    int c = pool.front().front().first;
    for (auto& r : pool) c = std::min(c, r.front().first);
    size_t best = pool.size();
    for (size_t i = 0; i < pool.size(); ++i)
      if (pool[i].front().first == c && (best == pool.size() || bits(pool[i]) < bits(pool[best]))) best = i;
    ZRow p = std::move(pool[best]);
    pool.erase(pool.begin() + best);
    std::vector<ZRow> next;
    for (auto& r : pool) {
      if (r.front().first == c) eliminate(r, p, c);
      if (!r.empty()) next.push_back(std::move(r));
    }
    pool = std::move(next);
    for (auto& [pc, q] : piv) eliminate(q, p, c);
    piv.push_back({c, std::move(p)});
  }
  return piv;
}

int RationalMatrix::rank() const { return static_cast<int>(rref(data_).size()); }

std::vector<QVec> RationalMatrix::kernel() const {
  auto R = rref(data_);
  std::vector<bool> is_piv(nc_, false);
  for (auto& [c, r] : R) is_piv[c] = true;
  std::vector<QVec> out;
  for (int f = 0; f < nc_; ++f) {
    if (is_piv[f]) continue;
    QVec x;
    x[f] = 1;
    for (auto& [c, r] : R) {
      Q lead(r.front().second), at(0);
      for (auto& [k, y] : r)
        if (k == f) at = Q(y);
      if (at != 0) x[c] = -at / lead;
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<QVec> RationalMatrix::solve(const QVec& b) const {
  for (auto& [r, x] : b)
    if (r < 0 || r >= nr_) throw std::invalid_argument("solve: right-hand side length mismatch");
  std::vector<QVec> aug = data_;
  for (auto& [r, x] : b) aug[r][nc_] = x;
  auto R = rref(aug);
  QVec x;
  for (auto& [c, r] : R) {
    if (c == nc_) return std::nullopt;
    Q rhs(0);
    for (auto& [k, y] : r)
      if (k == nc_) rhs = Q(y);
    if (rhs != 0) x[c] = rhs / Q(r.front().second);
  }
  return x;
}

QVec RationalMatrix::apply(const QVec& x) const {
  QVec y;
  for (int r = 0; r < nr_; ++r) {
    Q s = 0;
    for (auto& [c, v] : data_[r]) {
      auto it = x.find(c);
      if (it != x.end()) s += v * it->second;
    }
    if (s != 0) y[r] = s;
  }
  return y;
}

void RationalMatrix::dump(std::ostream& os) const {
  for (int r = 0; r < nr_; ++r)
    for (auto& [c, x] : data_[r]) os << "(" << r << ", " << c << ", \"" << to_fraction(x) << "\")\n";
}

}  // namespace tautring4
