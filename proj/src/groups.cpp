#include "fcunits/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace fcu {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidGroup, msg); }

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

GroupRef Group::make(const GroupSpec& spec) { return GroupRef(new Group(spec)); }

Group::Group(GroupSpec spec) : spec_(std::move(spec)) {
  const std::uint32_t r = spec_.rank;
  if (r > kMaxRank) invalid("rank exceeds " + std::to_string(kMaxRank));
  if (spec_.kind == GroupSpec::Kind::Cayley && (r != 0 || spec_.prufer_q != 0))
    invalid("a Cayley-table group has no free or Prufer part");
  if (spec_.kind == GroupSpec::Kind::Cayley && spec_.table.empty()) invalid("missing Cayley table");

  // Torsion part.
  if (!spec_.table.empty()) {
    n_ = static_cast<std::uint32_t>(spec_.table.size());
    if (n_ > kMaxTorsionOrder) invalid("Cayley table larger than 64");
    table_.assign(std::size_t{n_} * n_, 0);
    for (std::uint32_t i = 0; i < n_; ++i) {
      if (spec_.table[i].size() != n_) invalid("Cayley table is not square");
      std::vector<bool> seen(n_, false);
      for (std::uint32_t j = 0; j < n_; ++j) {
        const std::uint32_t v = spec_.table[i][j];
        if (v >= n_) invalid("Cayley table entry out of range");
        if (seen[v]) invalid("Cayley table row " + std::to_string(i) + " is not a permutation");
        seen[v] = true;
        table_[i * n_ + j] = v;
      }
    }
    for (std::uint32_t j = 0; j < n_; ++j) {
      std::vector<bool> seen(n_, false);
      for (std::uint32_t i = 0; i < n_; ++i) {
        if (seen[table_[i * n_ + j]]) invalid("Cayley table column " + std::to_string(j) + " is not a permutation");
        seen[table_[i * n_ + j]] = true;
      }
    }
    for (std::uint32_t i = 0; i < n_; ++i)
      if (table_[i] != i || table_[i * n_] != i) invalid("index 0 is not the identity");
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b)
        for (std::uint32_t c = 0; c < n_; ++c)
          if (t_mul(t_mul(a, b), c) != t_mul(a, t_mul(b, c)))
            invalid("Cayley table is not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                    std::to_string(c) + ")");
  } else {
    radix_ = spec_.invariants;
    std::uint64_t n = 1;
    for (auto d : radix_) {
      if (d == 0) invalid("torsion invariant must be positive");
      n *= d;
      if (n > kMaxTorsionOrder) invalid("torsion part larger than 64");
    }
    n_ = static_cast<std::uint32_t>(n);
    table_.assign(std::size_t{n_} * n_, 0);
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b) {
        auto ca = t_coords(a), cb = t_coords(b);
        for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = (ca[i] + cb[i]) % radix_[i];
        table_[a * n_ + b] = t_from_coords(ca);
      }
  }
  inv_.assign(n_, 0);
  order_.assign(n_, 1);
  for (std::uint32_t a = 0; a < n_; ++a) {
    for (std::uint32_t b = 0; b < n_; ++b)
      if (t_mul(a, b) == 0) inv_[a] = b;
    std::uint32_t x = a, k = 1;
    while (x != 0) {
      x = t_mul(x, a);
      ++k;
    }
    order_[a] = k;
  }
  for (std::uint32_t a = 0; a < n_ && torsion_abelian_; ++a)
    for (std::uint32_t b = 0; b < n_; ++b)
      if (t_mul(a, b) != t_mul(b, a)) {
        torsion_abelian_ = false;
        break;
      }

  // Pairing.
  if (spec_.matrix.empty()) spec_.matrix.assign(r, std::vector<std::int64_t>(r, 0));
  if (spec_.matrix.size() != r) invalid("pairing matrix must be r x r");
  pairing_gcd_ = 0;
  for (std::uint32_t i = 0; i < r; ++i) {
    if (spec_.matrix[i].size() != r) invalid("pairing matrix must be r x r");
    for (std::uint32_t j = 0; j < r; ++j) {
      const std::int64_t m = spec_.matrix[i][j];
      if (j <= i && m != 0) invalid("pairing matrix must be strictly upper triangular");
      pairing_gcd_ = std::gcd(pairing_gcd_, m < 0 ? -m : m);
    }
  }
  if (spec_.table.empty()) {
    if (!radix_.empty() || pairing_gcd_ != 0) {
      if (radix_.empty()) {
        z_ = 0;
      } else {
        if (spec_.target >= radix_.size()) invalid("pairing target index out of range");
        std::vector<std::uint32_t> c(radix_.size(), 0);
        c[spec_.target] = radix_[spec_.target] > 1 ? 1 : 0;
        z_ = t_from_coords(c);
      }
    }
  } else {
    if (spec_.target >= n_) invalid("pairing target element out of range");
    z_ = spec_.target;
  }
  pairing_zero_ = pairing_gcd_ == 0 || z_ == 0;
  if (!pairing_zero_) {
    if (!torsion_abelian_) invalid("a nonzero pairing needs an abelian torsion part");
  }
  {
    std::uint32_t x = 0;
    do {
      z_powers_.push_back(x);
      x = t_mul(x, z_);
    } while (x != 0);
  }

  // Prufer part.
  if (spec_.prufer_q != 0) {
    if (!is_prime_u32(spec_.prufer_q)) invalid("Prufer q must be prime");
    if (spec_.prufer_levels == 0) invalid("Prufer levels must be >= 1");
    std::uint64_t qk = 1;
    for (std::uint32_t i = 0; i < spec_.prufer_levels; ++i) {
      qk *= spec_.prufer_q;
      if (qk > (1u << 20)) invalid("Prufer truncation q^levels exceeds 2^20");
    }
  }

  // Spot-check associativity on a box of generators.
  std::vector<GroupElement> gens{identity()};
  for (std::uint32_t i = 0; i < r; ++i) {
    gens.push_back(free_generator(i));
    gens.push_back(inv(free_generator(i)));
  }
  for (const auto& t : generators(1))
    if (t.free_is_zero()) gens.push_back(t);
  for (const auto& a : gens)
    for (const auto& b : gens)
      for (const auto& c : gens)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) invalid("group law fails associativity on the generator box");
}

std::vector<std::uint32_t> Group::t_coords(std::uint32_t a) const {
  std::vector<std::uint32_t> c(radix_.size());
  for (std::size_t i = radix_.size(); i-- > 0;) {
    c[i] = a % radix_[i];
    a /= radix_[i];
  }
  return c;
}

std::uint32_t Group::t_from_coords(const std::vector<std::uint32_t>& c) const {
  std::uint32_t a = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i) a = a * radix_[i] + c[i] % radix_[i];
  return a;
}

std::int64_t Group::beta(const GroupElement& a, const GroupElement& b) const {
  std::int64_t s = 0;
  for (std::uint32_t i = 0; i < spec_.rank; ++i)
    for (std::uint32_t j = i + 1; j < spec_.rank; ++j) s += spec_.matrix[i][j] * a.free[i] * b.free[j];
  return s;
}

std::uint32_t Group::z_pow(std::int64_t k) const {
  return z_powers_[static_cast<std::size_t>(mod_floor(k, static_cast<std::int64_t>(z_powers_.size())))];
}

PruferPart Group::prufer_reduce(std::uint64_t num, std::uint32_t level) const {
  const std::uint64_t q = spec_.prufer_q;
  if (num == 0) return {};
  while (level > 0 && num % q == 0) {
    num /= q;
    --level;
  }
  return {level, num};
}

PruferPart Group::prufer_add(PruferPart a, PruferPart b) const {
  if (a.num == 0) return b;
  if (b.num == 0) return a;
  const std::uint64_t q = spec_.prufer_q;
  const std::uint32_t L = std::max(a.level, b.level);
  std::uint64_t qL = 1;
  for (std::uint32_t i = 0; i < L; ++i) qL *= q;
  std::uint64_t na = a.num, nb = b.num;
  for (std::uint32_t i = a.level; i < L; ++i) na *= q;
  for (std::uint32_t i = b.level; i < L; ++i) nb *= q;
  return prufer_reduce((na + nb) % qL, L);
}

PruferPart Group::prufer_neg(PruferPart a) const {
  if (a.num == 0) return a;
  std::uint64_t qL = 1;
  for (std::uint32_t i = 0; i < a.level; ++i) qL *= spec_.prufer_q;
  return {a.level, qL - a.num};
}

void Group::check(const GroupElement& a) const {
  for (std::size_t i = spec_.rank; i < kMaxRank; ++i)
    if (a.free[i] != 0) throw Error(ErrorCode::GroupMismatch, "free coordinate beyond the rank");
  if (a.torsion >= n_) throw Error(ErrorCode::GroupMismatch, "torsion index out of range");
  if (a.prufer.num != 0) {
    if (!has_prufer()) throw Error(ErrorCode::GroupMismatch, "group has no Prufer part");
    if (prufer_reduce(a.prufer.num, a.prufer.level) != a.prufer)
      throw Error(ErrorCode::GroupMismatch, "Prufer part not reduced");
    std::uint64_t qL = 1;
    for (std::uint32_t i = 0; i < a.prufer.level; ++i) {
      qL *= spec_.prufer_q;
      if (qL > kMaxPruferDenominator) throw Error(ErrorCode::GroupMismatch, "Prufer level too deep");
    }
    if (a.prufer.num >= qL) throw Error(ErrorCode::GroupMismatch, "Prufer numerator out of range");
  }
}

GroupElement Group::mul(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  GroupElement c;
  for (std::uint32_t i = 0; i < spec_.rank; ++i) c.free[i] = a.free[i] + b.free[i];
  c.torsion = t_mul(a.torsion, b.torsion);
  if (!pairing_zero_) c.torsion = t_mul(c.torsion, z_pow(beta(a, b)));
  if (has_prufer()) c.prufer = prufer_add(a.prufer, b.prufer);
  return c;
}

GroupElement Group::inv(const GroupElement& a) const {
  check(a);
  GroupElement c;
  for (std::uint32_t i = 0; i < spec_.rank; ++i) c.free[i] = -a.free[i];
  c.torsion = t_inv(a.torsion);
  if (!pairing_zero_) c.torsion = t_mul(c.torsion, z_pow(beta(a, a)));
  if (has_prufer()) c.prufer = prufer_neg(a.prufer);
  return c;
}

GroupElement Group::pow(const GroupElement& a, std::int64_t e) const {
  GroupElement base = e < 0 ? inv(a) : a;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  GroupElement result = identity();
  while (k) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

GroupElement Group::commutator(const GroupElement& a, const GroupElement& b) const {
  return mul(mul(mul(inv(a), inv(b)), a), b);
}

GroupElement Group::commutator_closed_form(const GroupElement& a, const GroupElement& b) const {
  const std::uint32_t ta = a.torsion, tb = b.torsion;
  GroupElement c;
  c.torsion = t_mul(t_mul(t_inv(ta), t_inv(tb)), t_mul(ta, tb));
  if (!pairing_zero_) {
    std::int64_t s = 0;
    for (std::uint32_t i = 0; i < spec_.rank; ++i)
      for (std::uint32_t j = i + 1; j < spec_.rank; ++j)
        s += spec_.matrix[i][j] * (a.free[i] * b.free[j] - b.free[i] * a.free[j]);
    c.torsion = t_mul(c.torsion, z_pow(s));
  }
  return c;
}

std::optional<std::uint64_t> Group::element_order(const GroupElement& a) const {
  check(a);
  if (!a.free_is_zero()) return std::nullopt;
  std::uint64_t n = order_[a.torsion];
  std::uint64_t qL = 1;
  for (std::uint32_t i = 0; i < a.prufer.level; ++i) qL *= spec_.prufer_q;
  return std::lcm(n, qL);
}

GroupElement Group::free_generator(std::size_t i) const {
  if (i >= spec_.rank) throw Error(ErrorCode::GroupMismatch, "free generator index out of range");
  GroupElement g;
  g.free[i] = 1;
  return g;
}

GroupElement Group::torsion_element(std::uint32_t index) const {
  if (index >= n_) throw Error(ErrorCode::GroupMismatch, "torsion index out of range");
  GroupElement g;
  g.torsion = index;
  return g;
}

GroupElement Group::prufer_element(std::uint64_t num, std::uint32_t level) const {
  if (!has_prufer()) throw Error(ErrorCode::GroupMismatch, "group has no Prufer part");
  std::uint64_t qL = 1;
  for (std::uint32_t i = 0; i < level; ++i) qL *= spec_.prufer_q;
  GroupElement g;
  g.prufer = prufer_reduce(num % qL, level);
  return g;
}

GroupElement Group::make_element(std::array<std::int64_t, kMaxRank> u, std::uint32_t torsion,
                                 PruferPart p) const {
  GroupElement g;
  g.free = u;
  g.torsion = torsion;
  g.prufer = p;
  check(g);
  return g;
}

std::vector<GroupElement> Group::torsion_elements(std::uint32_t level) const {
  std::vector<GroupElement> out;
  std::uint64_t qL = 1;
  if (has_prufer())
    for (std::uint32_t i = 0; i < level; ++i) qL *= spec_.prufer_q;
  for (std::uint32_t t = 0; t < n_; ++t)
    for (std::uint64_t s = 0; s < qL; ++s) {
      GroupElement g;
      g.torsion = t;
      if (qL > 1) g.prufer = prufer_reduce(s, level);
      out.push_back(g);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupElement> Group::commutator_generators() const {
  std::set<GroupElement> gens;
  for (std::uint32_t a = 0; a < n_; ++a)
    for (std::uint32_t b = 0; b < n_; ++b) {
      const std::uint32_t c = t_mul(t_mul(t_inv(a), t_inv(b)), t_mul(a, b));
      if (c != 0) gens.insert(torsion_element(c));
    }
  if (!pairing_zero_) {
    const std::uint32_t c = z_pow(pairing_gcd_);
    if (c != 0) gens.insert(torsion_element(c));
  }
  return {gens.begin(), gens.end()};
}

std::vector<GroupElement> Group::commutator_subgroup() const { return closure(commutator_generators()); }

std::vector<GroupElement> Group::generators(std::uint32_t prufer_level) const {
  std::vector<GroupElement> out;
  for (std::uint32_t i = 0; i < spec_.rank; ++i) out.push_back(free_generator(i));
  if (spec_.table.empty()) {
    for (std::size_t i = 0; i < radix_.size(); ++i) {
      if (radix_[i] == 1) continue;
      std::vector<std::uint32_t> c(radix_.size(), 0);
      c[i] = 1;
      out.push_back(torsion_element(t_from_coords(c)));
    }
  } else {
    // Greedy generating set of the table group.
    std::set<std::uint32_t> span{0};
    for (std::uint32_t t = 1; t < n_; ++t) {
      if (span.count(t)) continue;
      out.push_back(torsion_element(t));
      std::vector<std::uint32_t> gs;
      for (const auto& g : out)
        if (g.free_is_zero() && g.prufer.num == 0) gs.push_back(g.torsion);
      std::queue<std::uint32_t> todo;
      for (auto s : span) todo.push(s);
      while (!todo.empty()) {
        auto x = todo.front();
        todo.pop();
        for (auto g : gs) {
          auto y = t_mul(x, g);
          if (span.insert(y).second) todo.push(y);
        }
      }
    }
  }
  if (has_prufer() && prufer_level > 0) out.push_back(prufer_element(1, prufer_level));
  return out;
}

bool Group::is_central(const GroupElement& g) const {
  for (const auto& s : generators(1))
    if (commutator(g, s) != identity()) return false;
  return true;
}

CenterDescription Group::center() const {
  CenterDescription c;
  const std::uint32_t r = spec_.rank;
  bool free_whole = true;
  if (pairing_zero_) {
    for (std::uint32_t i = 0; i < r; ++i) {
      std::array<std::int64_t, kMaxRank> v{};
      v[i] = 1;
      c.free_lattice_generators.push_back(v);
    }
  } else {
    const std::int64_t d = static_cast<std::int64_t>(z_powers_.size());
    // A = M - M^T; u is central iff A u = 0 mod d.
    auto in_lattice = [&](const std::array<std::int64_t, kMaxRank>& u) {
      for (std::uint32_t i = 0; i < r; ++i) {
        std::int64_t s = 0;
        for (std::uint32_t j = 0; j < r; ++j) s += (spec_.matrix[i][j] - spec_.matrix[j][i]) * u[j];
        if (mod_floor(s, d) != 0) return false;
      }
      return true;
    };
    for (std::uint32_t i = 0; i < r; ++i) {
      std::array<std::int64_t, kMaxRank> v{};
      v[i] = 1;
      if (!in_lattice(v)) free_whole = false;
    }
    // Lattice = d Z^r + (solutions in [0, d)^r); keep a greedy generating set.
    std::set<std::array<std::int64_t, kMaxRank>> span;
    span.insert(std::array<std::int64_t, kMaxRank>{});
    auto add_gen = [&](const std::array<std::int64_t, kMaxRank>& g) {
      c.free_lattice_generators.push_back(g);
      std::vector<std::array<std::int64_t, kMaxRank>> frontier(span.begin(), span.end());
      while (!frontier.empty()) {
        std::vector<std::array<std::int64_t, kMaxRank>> next;
        for (auto x : frontier) {
          for (std::uint32_t i = 0; i < r; ++i) x[i] = mod_floor(x[i] + g[i], d);
          if (span.insert(x).second) next.push_back(x);
        }
        frontier = std::move(next);
      }
    };
    for (std::uint32_t i = 0; i < r; ++i) {
      std::array<std::int64_t, kMaxRank> v{};
      v[i] = d;
      c.free_lattice_generators.push_back(v);
    }
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < r; ++i) total *= static_cast<std::uint64_t>(d);
    if (total <= 65536) {
      for (std::uint64_t code = 1; code < total; ++code) {
        std::array<std::int64_t, kMaxRank> u{};
        std::uint64_t x = code;
        for (std::uint32_t i = r; i-- > 0;) {
          u[i] = static_cast<std::int64_t>(x % static_cast<std::uint64_t>(d));
          x /= static_cast<std::uint64_t>(d);
        }
        if (in_lattice(u) && !span.count(u)) add_gen(u);
      }
    }
  }
  for (const auto& v : c.free_lattice_generators) {
    GroupElement g;
    g.free = v;
    c.generators.push_back(g);
  }
  std::vector<std::uint32_t> zt;
  for (std::uint32_t a = 0; a < n_; ++a) {
    bool central = true;
    for (std::uint32_t b = 0; b < n_ && central; ++b) central = t_mul(a, b) == t_mul(b, a);
    if (central) zt.push_back(a);
  }
  for (auto a : zt)
    if (a != 0) c.generators.push_back(torsion_element(a));
  if (has_prufer()) c.generators.push_back(prufer_element(1, spec_.prufer_levels));
  c.is_whole_group = free_whole && zt.size() == n_;
  std::ostringstream d;
  if (c.is_whole_group) {
    d << "G (abelian)";
  } else {
    d << "{(u,a): ";
    if (pairing_zero_) d << "u in Z^" << r;
    else d << "(M - M^T) u = 0 mod " << z_powers_.size();
    d << ", a in Z(T) of order " << zt.size() << "}";
  }
  c.description = d.str();
  return c;
}

FcCertificate Group::is_fc() const {
  FcCertificate cert;
  std::uint64_t torsion_bound = 1;
  for (std::uint32_t a = 0; a < n_; ++a) {
    std::set<std::uint32_t> cls;
    for (std::uint32_t b = 0; b < n_; ++b) cls.insert(t_mul(t_mul(t_inv(b), a), b));
    torsion_bound = std::max<std::uint64_t>(torsion_bound, cls.size());
  }
  if (is_finite()) {
    cert.class_size_bound = torsion_bound;
    cert.reason = "finite group; largest conjugacy class has " + std::to_string(torsion_bound) + " elements";
    return cert;
  }
  std::uint64_t twist = 1;
  if (!pairing_zero_) twist = z_powers_.size() / std::gcd<std::uint64_t>(z_powers_.size(), pairing_gcd_);
  cert.class_size_bound = torsion_bound * twist;
  cert.reason = "class-2 central extension: the class of (u,a,p) lies in (u, class_T(a) * G'_free, p); bound " +
                std::to_string(cert.class_size_bound);
  return cert;
}

std::vector<GroupElement> Group::box(int radius, std::uint32_t prufer_level) const {
  const auto tors = torsion_elements(prufer_level);
  std::vector<GroupElement> out;
  const std::uint32_t r = spec_.rank;
  const std::int64_t side = 2 * radius + 1;
  std::int64_t count = 1;
  for (std::uint32_t i = 0; i < r; ++i) count *= side;
  for (std::int64_t code = 0; code < count; ++code) {
    std::array<std::int64_t, kMaxRank> u{};
    std::int64_t x = code;
    for (std::uint32_t i = r; i-- > 0;) {
      u[i] = x % side - radius;
      x /= side;
    }
    for (auto t : tors) {
      t.free = u;
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupElement> Group::elements() const {
  if (!is_finite()) throw Error(ErrorCode::InfiniteOrder, "group is infinite");
  return torsion_elements(0);
}

std::vector<GroupElement> Group::closure(const std::vector<GroupElement>& gens, std::size_t cap) const {
  std::set<GroupElement> seen{identity()};
  std::queue<GroupElement> todo;
  todo.push(identity());
  for (const auto& g : gens)
    if (!g.free_is_zero()) throw Error(ErrorCode::SubgroupTooLarge, "generator " + format(g) + " has infinite order");
  while (!todo.empty()) {
    const GroupElement x = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      GroupElement y = mul(x, g);
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw Error(ErrorCode::SubgroupTooLarge, "subgroup exceeds " + std::to_string(cap) + " elements");
        todo.push(y);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

GroupElement Group::coset_rep(const GroupElement& g, const std::vector<GroupElement>& subgroup) const {
  GroupElement best = mul(g, subgroup.front());
  for (const auto& s : subgroup) best = std::min(best, mul(g, s));
  return best;
}

GroupElement Group::torsion_coset_rep(const GroupElement& g) const {
  check(g);
  GroupElement out;
  out.free = g.free;
  return out;
}

std::vector<GroupElement> Group::coset_reps(const std::vector<GroupElement>& gens, int radius) const {
  for (const auto& g : gens)
    if (!g.free_is_zero())
      throw Error(ErrorCode::InfiniteIndexUnsupported,
                  "coset representatives need a torsion subgroup; " + format(g) + " has infinite order");
  const auto S = closure(gens);
  std::set<GroupElement> reps;
  const auto pool = is_finite() ? elements() : box(radius, 0);
  for (const auto& g : pool) reps.insert(coset_rep(g, S));
  return {reps.begin(), reps.end()};
}

QuotientMap Group::quotient_by(const std::vector<GroupElement>& C) const {
  std::set<std::uint32_t> kernel;
  for (const auto& c : C) {
    if (!c.free_is_zero() || c.prufer.num != 0) invalid("quotient kernel must lie in the finite torsion part");
    check(c);
    if (!is_central(c)) invalid("quotient kernel must be central");
    kernel.insert(c.torsion);
  }
  kernel.insert(0);
  for (auto a : kernel)
    for (auto b : kernel)
      if (!kernel.count(t_mul(a, b))) invalid("quotient kernel is not a subgroup");

  QuotientMap q;
  q.class_of.assign(n_, 0);
  std::vector<bool> assigned(n_, false);
  for (std::uint32_t a = 0; a < n_; ++a) {
    if (assigned[a]) continue;
    const auto idx = static_cast<std::uint32_t>(q.class_rep.size());
    q.class_rep.push_back(a);  // least member, since a scans upwards
    for (auto k : kernel) {
      q.class_of[t_mul(a, k)] = idx;
      assigned[t_mul(a, k)] = true;
    }
  }
  const auto m = static_cast<std::uint32_t>(q.class_rep.size());
  GroupSpec hs;
  hs.rank = spec_.rank;
  hs.kind = (spec_.rank == 0 && !has_prufer()) ? GroupSpec::Kind::Cayley : GroupSpec::Kind::CentralExtension;
  hs.table.assign(m, std::vector<std::uint32_t>(m, 0));
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) hs.table[i][j] = q.class_of[t_mul(q.class_rep[i], q.class_rep[j])];
  hs.target = q.class_of[z_];
  hs.matrix = spec_.matrix;
  hs.prufer_q = spec_.prufer_q;
  hs.prufer_levels = spec_.prufer_levels;
  q.target = Group::make(hs);
  q.source = this;
  for (auto k : kernel) q.kernel.push_back(torsion_element(k));
  std::sort(q.kernel.begin(), q.kernel.end());
  return q;
}

GroupElement QuotientMap::project(const GroupElement& g) const {
  GroupElement h = g;
  h.torsion = class_of.at(g.torsion);
  return h;
}

GroupElement QuotientMap::lift(const GroupElement& h) const {
  GroupElement g = h;
  g.torsion = class_rep.at(h.torsion);
  return g;
}

std::string Group::format(const GroupElement& g) const {
  if (spec_.kind == GroupSpec::Kind::Cayley) return std::to_string(g.torsion);
  std::ostringstream out;
  out << "(";
  for (std::uint32_t i = 0; i < spec_.rank; ++i) out << (i ? "," : "") << g.free[i];
  out << ";";
  if (!radix_.empty()) {
    auto c = t_coords(g.torsion);
    out << "[";
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    out << "]";
  } else {
    out << "t" << g.torsion;
  }
  if (has_prufer() && g.prufer.num != 0) out << ";" << g.prufer.num << "/" << spec_.prufer_q << "^" << g.prufer.level;
  out << ")";
  return out.str();
}

// ---------------------------------------------------------------------------

namespace small_groups {

std::vector<std::vector<std::uint32_t>> cyclic(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

std::vector<std::vector<std::uint32_t>> direct_product(const std::vector<std::vector<std::uint32_t>>& a,
                                                       const std::vector<std::vector<std::uint32_t>>& b) {
  const auto na = static_cast<std::uint32_t>(a.size()), nb = static_cast<std::uint32_t>(b.size());
  std::vector<std::vector<std::uint32_t>> t(na * nb, std::vector<std::uint32_t>(na * nb));
  for (std::uint32_t i = 0; i < na * nb; ++i)
    for (std::uint32_t j = 0; j < na * nb; ++j) t[i][j] = a[i / nb][j / nb] * nb + b[i % nb][j % nb];
  return t;
}

std::vector<std::vector<std::uint32_t>> symmetric(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> perms;
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  for (std::uint32_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  const auto m = static_cast<std::uint32_t>(perms.size());
  std::vector<std::vector<std::uint32_t>> t(m, std::vector<std::uint32_t>(m));
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) {
      std::vector<std::uint32_t> c(n);
      for (std::uint32_t x = 0; x < n; ++x) c[x] = perms[i][perms[j][x]];  // apply j, then i
      t[i][j] = index[c];
    }
  return t;
}

std::vector<std::vector<std::uint32_t>> dihedral(std::uint32_t n) {
  // r^k s^e has index k + n e; s r s = r^-1.
  const std::uint32_t m = 2 * n;
  std::vector<std::vector<std::uint32_t>> t(m, std::vector<std::uint32_t>(m));
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) {
      const std::uint32_t a = i % n, e = i / n, b = j % n, f = j / n;
      const std::uint32_t k = e ? (a + n - b) % n : (a + b) % n;
      t[i][j] = k + n * ((e + f) % 2);
    }
  return t;
}

std::vector<std::vector<std::uint32_t>> quaternion() {
  // Index 2u + s encodes sign (-1)^s times unit u in {1, i, j, k}.
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<std::uint32_t>> t(8, std::vector<std::uint32_t>(8));
  for (std::uint32_t a = 0; a < 8; ++a)
    for (std::uint32_t b = 0; b < 8; ++b) {
      const int ua = a / 2, sa = a % 2, ub = b / 2, sb = b % 2;
      const int u = unit_mul[ua][ub];
      const int s = (sa + sb + unit_sign[ua][ub]) % 2;
      t[a][b] = static_cast<std::uint32_t>(2 * u + s);
    }
  return t;
}

}  // namespace small_groups

}  // namespace fcu
