#include "tiling/group.hpp"

#include <algorithm>
#include <sstream>

namespace tiling {

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::operator+(const GroupElement& o) const {
  if (o.size() != size()) throw InputError("GroupElement: length mismatch");
  GroupElement r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

GroupElement GroupElement::operator-(const GroupElement& o) const {
  if (o.size() != size()) throw InputError("GroupElement: length mismatch");
  GroupElement r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.coords[i] -= o.coords[i];
  return r;
}

GroupElement GroupElement::operator-() const { return scaled(-1); }

GroupElement GroupElement::scaled(int64_t k) const {
  GroupElement r = *this;
  for (auto& c : r.coords) c *= k;
  return r;
}

bool GroupElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](int64_t c) { return c == 0; });
}

std::string GroupElement::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec::GroupSpec(int d, std::vector<int64_t> tors) : free_rank(d), torsion(std::move(tors)) {
  if (free_rank < 0) throw InputError("GroupSpec: negative free rank");
  for (int64_t n : torsion) {
    if (n < 1) throw InputError("GroupSpec: torsion modulus must be >= 1");
  }
}

GroupElement GroupSpec::canonical(GroupElement x) const {
  if (x.size() != rank()) {
    throw InputError("element " + x.str() + " has length " + std::to_string(x.size()) + ", group rank is " +
                     std::to_string(rank()));
  }
  for (std::size_t m = 0; m < torsion.size(); ++m) {
    auto& c = x.coords[static_cast<std::size_t>(free_rank) + m];
    c = floor_mod(c, torsion[m]);
  }
  return x;
}

GroupElement GroupSpec::element(std::vector<int64_t> coords) const { return canonical(GroupElement(std::move(coords))); }

std::string GroupSpec::str() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0 || torsion.empty()) {
    os << "Z^" << free_rank;
    first = false;
  }
  for (int64_t n : torsion) {
    os << (first ? "" : " x ") << "Z/" << n;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// FinMap

FinMap::FinMap(GroupSpec group, std::initializer_list<std::pair<GroupElement, long>> entries)
    : group_(std::move(group)) {
  for (const auto& [x, c] : entries) add(x, Int(c));
}

FinMap FinMap::delta(const GroupSpec& group, const GroupElement& x, const Int& coeff) {
  FinMap f(group);
  f.add(x, coeff);
  return f;
}

FinMap FinMap::indicator(const GroupSpec& group, const std::vector<GroupElement>& points) {
  FinMap f(group);
  for (const auto& x : points) {
    if (f.at(x) == 0) f.add(x, Int(1));
  }
  return f;
}

void FinMap::add(const GroupElement& x, const Int& coeff) {
  if (coeff == 0) return;
  GroupElement key = group_.canonical(x);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(std::move(key), coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) entries_.erase(it);
}

Int FinMap::at(const GroupElement& x) const {
  auto it = entries_.find(group_.canonical(x));
  return it == entries_.end() ? Int(0) : it->second;
}

Int FinMap::sum() const {
  Int s = 0;
  for (const auto& [x, c] : entries_) s += c;
  return s;
}

FinMap FinMap::operator+(const FinMap& o) const {
  if (!(o.group_ == group_)) throw InputError("FinMap: group mismatch");
  FinMap r = *this;
  for (const auto& [x, c] : o.entries_) r.add(x, c);
  return r;
}

FinMap FinMap::operator-(const FinMap& o) const { return *this + (-o); }

FinMap FinMap::operator-() const { return Int(-1) * *this; }

FinMap operator*(const Int& k, const FinMap& f) {
  FinMap r(f.group_);
  if (k == 0) return r;
  for (const auto& [x, c] : f.entries_) r.entries_.emplace(x, k * c);
  return r;
}

std::string FinMap::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [x, c] : entries_) {
    os << (first ? "" : ", ") << x.str() << ':' << c.get_str();
    first = false;
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// PeriodicMap

namespace {

std::size_t product(const std::vector<int64_t>& dims) {
  std::size_t n = 1;
  for (int64_t d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

}  // namespace

PeriodicMap::PeriodicMap(GroupSpec group, std::vector<int64_t> periods, std::vector<Int> values)
    : group_(std::move(group)), periods_(std::move(periods)), values_(std::move(values)) {
  if (periods_.size() != static_cast<std::size_t>(group_.free_rank)) {
    throw InputError("PeriodicMap: expected one period per free coordinate");
  }
  for (int64_t p : periods_) {
    if (p < 1) throw InputError("PeriodicMap: periods must be positive");
  }
  if (values_.size() != product(shape())) {
    throw InputError("PeriodicMap: value grid has " + std::to_string(values_.size()) + " cells, expected " +
                     std::to_string(product(shape())));
  }
}

PeriodicMap PeriodicMap::constant(const GroupSpec& group, std::vector<int64_t> periods, const Int& c) {
  std::vector<int64_t> shape = periods;
  shape.insert(shape.end(), group.torsion.begin(), group.torsion.end());
  return PeriodicMap(group, std::move(periods), std::vector<Int>(product(shape), c));
}

PeriodicMap PeriodicMap::from_function(const GroupSpec& group, std::vector<int64_t> periods,
                                       const std::function<Int(const GroupElement&)>& fn) {
  PeriodicMap m = constant(group, std::move(periods), Int(0));
  for (std::size_t i = 0; i < m.values_.size(); ++i) m.values_[i] = fn(m.cell(i));
  return m;
}

std::vector<int64_t> PeriodicMap::shape() const {
  std::vector<int64_t> s = periods_;
  s.insert(s.end(), group_.torsion.begin(), group_.torsion.end());
  return s;
}

std::size_t PeriodicMap::index_of(const GroupElement& x) const {
  if (x.size() != group_.rank()) throw InputError("PeriodicMap: element of wrong rank " + x.str());
  const auto s = shape();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    idx = idx * static_cast<std::size_t>(s[i]) + static_cast<std::size_t>(floor_mod(x[i], s[i]));
  }
  return idx;
}

GroupElement PeriodicMap::cell(std::size_t index) const {
  const auto s = shape();
  GroupElement x(std::vector<int64_t>(s.size(), 0));
  for (std::size_t i = s.size(); i-- > 0;) {
    const auto n = static_cast<std::size_t>(s[i]);
    x[i] = static_cast<int64_t>(index % n);
    index /= n;
  }
  return x;
}

bool PeriodicMap::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Int& v) { return v == 0; });
}

PeriodicMap PeriodicMap::with_periods(std::vector<int64_t> periods) const {
  if (periods.size() != periods_.size()) throw InputError("PeriodicMap: period vector length mismatch");
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (periods[i] < 1 || periods[i] % periods_[i] != 0) {
      throw InputError("PeriodicMap: new period " + std::to_string(periods[i]) + " is not a multiple of " +
                       std::to_string(periods_[i]));
    }
  }
  return from_function(group_, std::move(periods), [this](const GroupElement& x) { return at(x); });
}

std::vector<int64_t> joint_periods(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
  if (a.size() != b.size()) throw InputError("joint_periods: length mismatch");
  std::vector<int64_t> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = lcm64(a[i], b[i]);
  return r;
}

bool same_function(const PeriodicMap& a, const PeriodicMap& b) {
  if (!(a.group() == b.group())) return false;
  if (a.periods() == b.periods()) return a.values() == b.values();
  const auto p = joint_periods(a.periods(), b.periods());
  return a.with_periods(p).values() == b.with_periods(p).values();
}

// ---------------------------------------------------------------------------
// Quotients

GroupElement Quotient::project(const GroupElement& x) const {
  if (x.size() != source.rank()) throw InputError("Quotient: element of wrong rank " + x.str());
  std::vector<int64_t> out;
  out.reserve(kept_columns.size());
  for (std::size_t k = 0; k < kept_columns.size(); ++k) {
    Int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += Int(x[i]) * V(i, kept_columns[k]);
    if (moduli[k] != 0) mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), moduli[k].get_mpz_t());
    out.push_back(to_int64(acc));
  }
  return target.canonical(GroupElement(std::move(out)));
}

Quotient quotient_by(const GroupSpec& group, const GroupElement& w) {
  const GroupElement cw = group.canonical(w);
  bool free_part = false;
  for (int i = 0; i < group.free_rank; ++i) free_part = free_part || cw[static_cast<std::size_t>(i)] != 0;
  if (cw.is_zero()) throw UnsupportedError("pushforward: w is zero");
  if (!free_part) throw UnsupportedError("pushforward: w " + w.str() + " has finite order");

  const std::size_t r = group.rank();
  const std::size_t t = group.torsion.size();
  IntMatrix rel(t + 1, r);
  for (std::size_t m = 0; m < t; ++m) rel(m, static_cast<std::size_t>(group.free_rank) + m) = group.torsion[m];
  for (std::size_t i = 0; i < r; ++i) rel(t, i) = cw[i];

  // Relations are rows; x -> x V carries the row lattice onto that of D.
  SnfDecomposition snf = smith_normal_form(rel);
  Quotient q;
  q.source = group;
  q.V = snf.V;
  std::vector<std::size_t> free_cols;
  std::vector<std::size_t> tors_cols;
  std::vector<int64_t> tors_moduli;
  for (std::size_t k = 0; k < r; ++k) {
    const Int d = k < rel.rows() ? snf.D(k, k) : Int(0);
    if (d == 0) {
      free_cols.push_back(k);
    } else if (d != 1) {
      tors_cols.push_back(k);
      tors_moduli.push_back(to_int64(d));
    }
  }
  q.target = GroupSpec(static_cast<int>(free_cols.size()), tors_moduli);
  q.kept_columns = free_cols;
  q.kept_columns.insert(q.kept_columns.end(), tors_cols.begin(), tors_cols.end());
  q.moduli.assign(free_cols.size(), Int(0));
  for (int64_t m : tors_moduli) q.moduli.emplace_back(m);
  return q;
}

// ---------------------------------------------------------------------------
// Operations

FinMap convolve(const FinMap& f, const FinMap& g) {
  if (!(f.group() == g.group())) throw InputError("convolve: group mismatch");
  FinMap out(f.group());
  for (const auto& [x, a] : f.entries()) {
    for (const auto& [y, b] : g.entries()) out.add(x + y, a * b);
  }
  return out;
}

PeriodicMap convolve_periodic(const FinMap& f, const PeriodicMap& a) {
  if (!(f.group() == a.group())) throw InputError("convolve_periodic: group mismatch");
  std::vector<Int> values(a.cell_count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const GroupElement x = a.cell(i);
    Int acc = 0;
    for (const auto& [y, c] : f.entries()) acc += c * a.at(x - y);
    values[i] = std::move(acc);
  }
  return PeriodicMap(a.group(), a.periods(), std::move(values));
}

FinMap dilate(const FinMap& f, int64_t r) {
  if (r < 1) throw InputError("dilate: factor must be >= 1");
  FinMap out(f.group());
  for (const auto& [x, c] : f.entries()) out.add(x.scaled(r), c);
  return out;
}

FinMap difference(const FinMap& f, const GroupElement& h) {
  FinMap out(f.group());
  for (const auto& [x, c] : f.entries()) {
    out.add(x - h, c);
    out.add(x, -c);
  }
  return out;
}

PeriodicMap difference(const PeriodicMap& a, const GroupElement& h) {
  return PeriodicMap::from_function(a.group(), a.periods(),
                                    [&](const GroupElement& x) { return Int(a.at(x + h) - a.at(x)); });
}

Pushforward pushforward(const FinMap& f, const GroupElement& w) {
  Quotient q = quotient_by(f.group(), w);
  FinMap image(q.target);
  for (const auto& [x, c] : f.entries()) image.add(q.project(x), c);
  return Pushforward{std::move(q), std::move(image)};
}

Int l1_norm(const FinMap& f) {
  Int s = 0;
  for (const auto& [x, c] : f.entries()) s += abs(c);
  return s;
}

std::vector<UnitTerm> unit_expansion(const FinMap& f) {
  if (f.is_zero()) throw InputError("unit_expansion: f is zero");
  std::vector<UnitTerm> terms;
  for (const auto& [x, c] : f.entries()) {
    const RationalMod1 sign = c > 0 ? RationalMod1() : RationalMod1::half();
    const int64_t reps = to_int64(abs(c));
    for (int64_t k = 0; k < reps; ++k) terms.push_back(UnitTerm{x, sign});
  }
  return terms;
}

}  // namespace tiling
