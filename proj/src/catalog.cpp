#include "kgb/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "kgb/error.hpp"
#include "kgb/field.hpp"

namespace kgb {

namespace {

long long ipow(long long b, long long e) {
  long long r = 1;
  for (long long i = 0; i < e; ++i) r *= b;
  return r;
}

long long mod(long long x, long long m) { return ((x % m) + m) % m; }

class Builder {
 public:
  Builder(int p, int m, std::string label) {
    pres_.p = p;
    pres_.m = m;
    pres_.label = std::move(label);
  }

  int gen(const std::string& name, long long order) {
    pres_.names.push_back(name);
    pres_.orders.push_back(static_cast<int>(order));
    pres_.powers.emplace_back();
    return pres_.rank() - 1;
  }

  /// g^e with e reduced modulo the relative order of g; only valid for
  /// generators whose power relation is trivial.
  Syllable pw(int g, long long e) const {
    return {g, mod(e, pres_.orders[g])};
  }

  void power(int g, Word w) { pres_.powers[g] = clean(std::move(w)); }
  void comm(int hi, int lo, Word w) {
    w = clean(std::move(w));
    if (!w.empty()) pres_.commutators[{hi, lo}] = std::move(w);
  }
  void param(const std::string& k, long long v) { pres_.params[k] = v; }

  PcPresentation done() { return std::move(pres_); }

 private:
  static Word clean(Word w) {
    Word out;
    for (auto& s : w) {
      if (s.exp != 0) out.push_back(s);
    }
    return out;
  }

  PcPresentation pres_;
};

long long get(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw Error(ErrorCode::kInvalidArgument, "missing parameter '" + key + "'");
  }
  return it->second;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::kParameterOutOfRange, what);
}

void require_prime(long long p) {
  require(p >= 2 && p <= 13 && is_prime(static_cast<int>(p)), "p must be a prime <= 13");
}

// The realization cap is order 1024; keep catalog parameters within it.
void require_size(long long p, long long m) {
  require(ipow(p, m) <= 1024, "group order exceeds the supported size (1024)");
}

std::string label(const std::string& name, const Params& shown) {
  std::ostringstream os;
  os << name << '(';
  bool first = true;
  for (const auto& [k, v] : shown) {
    if (!first) os << ',';
    os << k << '=' << v;
    first = false;
  }
  os << ')';
  return os.str();
}

PcPresentation cyclic(long long p, long long n) {
  require_prime(p);
  require(n >= 1, "C requires n >= 1");
  require_size(p, n);
  Builder b(static_cast<int>(p), static_cast<int>(n), "C" + std::to_string(ipow(p, n)));
  b.gen("a", ipow(p, n));
  b.param("p", p);
  b.param("n", n);
  return b.done();
}

PcPresentation dihedral(long long n) {
  require(n >= 3, "D requires n >= 3");
  require_size(2, n);
  Builder b(2, static_cast<int>(n), "D" + std::to_string(ipow(2, n)));
  const int a = b.gen("a", ipow(2, n - 1));
  const int x = b.gen("b", 2);
  b.comm(x, a, {b.pw(a, 2)});
  b.param("n", n);
  return b.done();
}

PcPresentation quaternion(long long n) {
  require(n >= 3, "Q requires n >= 3");
  require_size(2, n);
  Builder b(2, static_cast<int>(n), "Q" + std::to_string(ipow(2, n)));
  const int a = b.gen("a", ipow(2, n - 1));
  const int x = b.gen("b", 2);
  b.power(x, {b.pw(a, ipow(2, n - 2))});
  b.comm(x, a, {b.pw(a, 2)});
  b.param("n", n);
  return b.done();
}

PcPresentation semidihedral(long long n) {
  require(n >= 4, "SD requires n >= 4");
  require_size(2, n);
  Builder b(2, static_cast<int>(n), "SD" + std::to_string(ipow(2, n)));
  const int a = b.gen("a", ipow(2, n - 1));
  const int x = b.gen("b", 2);
  // b^-1 a b = a^{2^{n-2}-1}
  b.comm(x, a, {b.pw(a, 2 - ipow(2, n - 2))});
  b.param("n", n);
  return b.done();
}

PcPresentation modular(long long p, long long n) {
  require_prime(p);
  require(n >= 3 && (p > 2 || n >= 4), "M requires n >= 3 (n >= 4 for p = 2)");
  require_size(p, n);
  Builder b(static_cast<int>(p), static_cast<int>(n), "M" + std::to_string(ipow(p, n)));
  const int a = b.gen("a", ipow(p, n - 1));
  const int x = b.gen("b", p);
  b.comm(x, a, {b.pw(a, ipow(p, n - 2))});
  b.param("p", p);
  b.param("n", n);
  return b.done();
}

// Common skeleton of the three-generator families: a of order p^{m-2},
// c and d of relative order p.
struct ThreeGen {
  Builder b;
  int a, c, d;
  long long m;
};

ThreeGen three_gen(const std::string& name, long long p, long long m, long long a_order) {
  Params shown{{"m", m}};
  if (p != 2) shown["p"] = p;
  ThreeGen t{Builder(static_cast<int>(p), static_cast<int>(m), label(name, shown)), 0, 0, 0, m};
  t.a = t.b.gen("a", a_order);
  t.c = t.b.gen("c", p);
  t.d = t.b.gen("d", p);
  t.b.param("m", m);
  if (p != 2) t.b.param("p", p);
  return t;
}

PcPresentation two_group(const std::string& name, long long m) {
  auto in_range = [&](long long lo) {
    require(m >= lo, name + " requires m >= " + std::to_string(lo));
    require_size(2, m);
  };
  const long long e3 = m >= 3 ? ipow(2, m - 3) : 0;
  const long long e4 = m >= 4 ? ipow(2, m - 4) : 0;

  if (name == "G4") {
    in_range(4);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.comm(t.d, t.c, {t.b.pw(t.a, e3)});
    return t.b.done();
  }
  if (name == "G5") {
    in_range(4);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.comm(t.c, t.a, {{t.d, 1}});
    return t.b.done();
  }
  if (name == "G11") {
    // Printed with a^{2^{m-1}} = 1 and (c,a) = a^{2+2^{m-2}}; the group so
    // presented has order 2^{m+1}.
    in_range(4);
    require_size(2, m + 1);
    auto t = three_gen(name, 2, m, ipow(2, m - 1));
    PcPresentation out;
    t.b.comm(t.c, t.a, {t.b.pw(t.a, 2 + ipow(2, m - 2))});
    out = t.b.done();
    out.m = static_cast<int>(m + 1);
    return out;
  }
  if (name == "G12") {
    in_range(5);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.comm(t.d, t.c, {t.b.pw(t.a, e3)});
    t.b.comm(t.c, t.a, {t.b.pw(t.a, 2)});
    return t.b.done();
  }
  if (name == "G13") {
    in_range(5);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.comm(t.c, t.a, {t.b.pw(t.a, 2), {t.d, 1}});
    return t.b.done();
  }
  if (name == "G14") {
    in_range(5);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.power(t.c, {t.b.pw(t.a, e3)});
    t.b.comm(t.c, t.a, {t.b.pw(t.a, 2), {t.d, 1}});
    return t.b.done();
  }
  if (name == "G15") {
    in_range(5);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.comm(t.d, t.a, {t.b.pw(t.a, e3)});
    t.b.comm(t.c, t.a, {t.b.pw(t.a, 2 + e3)});
    return t.b.done();
  }
  if (name == "G16") {
    in_range(5);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.comm(t.d, t.c, {t.b.pw(t.a, e3)});
    t.b.comm(t.d, t.a, {t.b.pw(t.a, e3)});
    t.b.comm(t.c, t.a, {t.b.pw(t.a, 2 + e3)});
    return t.b.done();
  }
  if (name == "G17") {
    in_range(5);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.comm(t.d, t.a, {t.b.pw(t.a, e3)});
    t.b.comm(t.c, t.a, {{t.d, 1}});
    return t.b.done();
  }
  if (name == "G18") {
    in_range(4);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.power(t.c, {{t.d, 1}});
    t.b.comm(t.d, t.a, {t.b.pw(t.a, e3)});
    t.b.comm(t.c, t.a, {t.b.pw(t.a, 2), {t.d, 1}});
    return t.b.done();
  }
  if (name == "G22") {
    in_range(6);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.comm(t.d, t.c, {t.b.pw(t.a, e3)});
    t.b.comm(t.c, t.a, {t.b.pw(t.a, -e4), {t.d, 1}});
    return t.b.done();
  }
  if (name == "G23") {
    in_range(6);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.comm(t.d, t.c, {t.b.pw(t.a, e3)});
    t.b.comm(t.c, t.a, {t.b.pw(t.a, 2 - e4), {t.d, 1}});
    return t.b.done();
  }
  if (name == "G24") {
    in_range(6);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.comm(t.d, t.a, {t.b.pw(t.a, e3)});
    t.b.comm(t.c, t.a, {t.b.pw(t.a, 2 - e4), {t.d, 1}});
    return t.b.done();
  }
  if (name == "G25") {
    in_range(5);
    auto t = three_gen(name, 2, m, ipow(2, m - 2));
    t.b.power(t.c, {t.b.pw(t.a, e3)});
    t.b.comm(t.d, t.a, {t.b.pw(t.a, e3)});
    t.b.comm(t.c, t.a, {t.b.pw(t.a, 2 - e4), {t.d, 1}});
    return t.b.done();
  }
  throw Error(ErrorCode::kUnknownGroup, "unknown group '" + name + "'");
}

bool is_quadratic_nonresidue(long long r, long long p) {
  r = mod(r, p);
  if (r == 0) return false;
  for (long long x = 1; x < p; ++x) {
    if ((x * x) % p == r) return false;
  }
  return true;
}

PcPresentation odd_group(const std::string& name, const Params& params) {
  if (name == "G11odd") {
    Builder b(3, 4, "G11odd");
    const int a = b.gen("a", 9);
    const int c = b.gen("c", 3);
    const int d = b.gen("d", 3);
    b.power(c, {b.pw(a, 3)});
    b.comm(c, a, {{d, 1}});
    b.comm(d, c, {b.pw(a, 3)});
    return b.done();
  }
  const long long p = get(params, "p");
  const long long m = get(params, "m");
  require_prime(p);
  require(p > 2, name + " requires an odd prime");
  require_size(p, m);
  if (name == "G1") {
    require(m >= 3, "G1 requires m >= 3");
    auto t = three_gen(name, p, m, ipow(p, m - 2));
    t.b.comm(t.c, t.a, {{t.d, 1}});
    return t.b.done();
  }
  if (name == "G7") {
    require(m >= 4, "G7 requires m >= 4");
    auto t = three_gen(name, p, m, ipow(p, m - 2));
    t.b.comm(t.c, t.a, {{t.d, 1}});
    t.b.comm(t.d, t.a, {t.b.pw(t.a, ipow(p, m - 3))});
    return t.b.done();
  }
  if (name == "H") {
    const long long r = get(params, "r");
    require(m >= 4, "H requires m >= 4");
    require(r == 1 || is_quadratic_nonresidue(r, p), "H requires r = 1 or a quadratic nonresidue");
    auto t = three_gen(name, p, m, ipow(p, m - 2));
    t.b.param("r", r);
    PcPresentation out;
    t.b.comm(t.c, t.a, {{t.d, 1}});
    t.b.comm(t.d, t.c, {t.b.pw(t.a, -r * ipow(p, m - 3))});
    out = t.b.done();
    out.label = label("H", {{"m", m}, {"p", p}, {"r", r}});
    return out;
  }
  throw Error(ErrorCode::kUnknownGroup, "unknown group '" + name + "'");
}

PcPresentation miech(const Params& params) {
  const long long p = get(params, "p");
  const long long m1 = get(params, "m1"), m2 = get(params, "m2"), m3 = get(params, "m3");
  const long long R = get(params, "R"), r = get(params, "r");
  const long long S = get(params, "S"), s = get(params, "s");
  require_prime(p);
  require(m1 >= 1 && m2 >= 1 && m3 >= 1, "miech requires m1, m2, m3 >= 1");
  require(r >= 0 && s >= 0, "miech requires r, s >= 0");
  require_size(p, m1 + m2 + m3);
  std::ostringstream lab;
  lab << "miech(p=" << p << ",m1=" << m1 << ",m2=" << m2 << ",m3=" << m3 << ",R=" << R
      << ",r=" << r << ",S=" << S << ",s=" << s << ')';
  Builder b(static_cast<int>(p), static_cast<int>(m1 + m2 + m3), lab.str());
  const int a = b.gen("a", ipow(p, m1));
  const int c = b.gen("c", ipow(p, m2));
  const int d = b.gen("d", ipow(p, m3));
  b.power(a, {b.pw(d, R * ipow(p, r))});
  b.power(c, {b.pw(d, S * ipow(p, s))});
  b.comm(c, a, {{d, 1}});
  for (const auto& [k, v] : params) b.param(k, v);
  return b.done();
}

// Short names: C<N>, D<N>, Q<N>, SD<N>, M<N> with N the group order.
bool parse_short(const std::string& token, PcPresentation& out) {
  std::size_t i = 0;
  while (i < token.size() && std::isalpha(static_cast<unsigned char>(token[i]))) ++i;
  const std::string head = token.substr(0, i);
  const std::string tail = token.substr(i);
  if (tail.empty() || head.empty()) return false;
  for (char ch : tail) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  if (head != "C" && head != "D" && head != "Q" && head != "SD" && head != "M") return false;
  const long long order = std::stoll(tail);
  long long p = 0;
  for (long long d = 2; d <= order; ++d) {
    if (order % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) throw Error(ErrorCode::kParameterOutOfRange, "order must be a prime power");
  long long n = 0;
  long long rest = order;
  while (rest % p == 0) {
    rest /= p;
    ++n;
  }
  if (rest != 1) throw Error(ErrorCode::kParameterOutOfRange, "order must be a prime power");
  if (head == "C") {
    out = cyclic(p, n);
  } else if (head == "M") {
    out = modular(p, n);
  } else {
    if (p != 2) throw Error(ErrorCode::kParameterOutOfRange, head + " is defined for 2-groups only");
    out = head == "D" ? dihedral(n) : head == "Q" ? quaternion(n) : semidihedral(n);
  }
  return true;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> kEntries = {
      {"C", {"p", "n"}, "p prime <= 13, n >= 1", "cyclic group of order p^n"},
      {"D", {"n"}, "n >= 3", "dihedral 2-group of order 2^n: a^{2^{n-1}}=b^2=1, (b,a)=a^2"},
      {"Q", {"n"}, "n >= 3",
       "generalized quaternion of order 2^n: a^{2^{n-1}}=1, b^2=a^{2^{n-2}}, (b,a)=a^2"},
      {"SD", {"n"}, "n >= 4", "semidihedral of order 2^n: a^{2^{n-1}}=b^2=1, (b,a)=a^{2-2^{n-2}}"},
      {"M", {"p", "n"}, "n >= 3 (n >= 4 for p = 2)",
       "modular group of order p^n: a^{p^{n-1}}=b^p=1, (b,a)=a^{p^{n-2}}"},
      {"G1", {"p", "m"}, "p odd, m >= 3", "a^{p^{m-2}}=c^p=d^p=1, (d,a)=(d,c)=1, (c,a)=d"},
      {"H", {"p", "m", "r"}, "p odd, m >= 4, r = 1 or a nonresidue mod p",
       "a^{p^{m-2}}=c^p=d^p=1, (d,a)=1, (c,a)=d, (d,c)=a^{-rp^{m-3}}"},
      {"G7", {"p", "m"}, "p odd, m >= 4",
       "a^{p^{m-2}}=c^p=d^p=1, (d,a)=a^{p^{m-3}}, (c,a)=d, (d,c)=1"},
      {"G11odd", {}, "order 81", "a^9=d^3=1, a^3=c^3, (d,a)=1, (c,a)=d, (d,c)=a^3"},
      {"G2", {"m"}, "m >= 4", "Q_{2^{m-1}} x C_2"},
      {"G3", {"m"}, "m >= 4", "D_{2^{m-1}} x C_2"},
      {"G4", {"m"}, "m >= 4", "a^{2^{m-2}}=c^2=d^2=1, (d,a)=(c,a)=1, (d,c)=a^{2^{m-3}}"},
      {"G5", {"m"}, "m >= 4", "a^{2^{m-2}}=c^2=d^2=1, (d,a)=(d,c)=1, (c,a)=d"},
      {"G11", {"m"}, "m >= 4 (order 2^{m+1})",
       "a^{2^{m-1}}=c^2=d^2=1, (d,c)=(d,a)=1, (c,a)=a^{2+2^{m-2}}"},
      {"G12", {"m"}, "m >= 5",
       "a^{2^{m-2}}=c^2=d^2=1, (d,c)=a^{2^{m-3}}, (d,a)=1, (c,a)=a^2"},
      {"G13", {"m"}, "m >= 5", "a^{2^{m-2}}=c^2=d^2=1, (d,a)=(d,c)=1, (c,a)=a^2 d"},
      {"G14", {"m"}, "m >= 5",
       "a^{2^{m-2}}=d^2=1, c^2=a^{2^{m-3}}, (d,a)=(d,c)=1, (c,a)=a^2 d"},
      {"G15", {"m"}, "m >= 5",
       "a^{2^{m-2}}=c^2=d^2=1, (d,c)=1, (d,a)=a^{2^{m-3}}, (c,a)=a^{2+2^{m-3}}"},
      {"G16", {"m"}, "m >= 5",
       "a^{2^{m-2}}=c^2=d^2=1, (d,c)=(d,a)=a^{2^{m-3}}, (c,a)=a^{2+2^{m-3}}"},
      {"G17", {"m"}, "m >= 5",
       "a^{2^{m-2}}=d^2=c^2=1, (d,a)=a^{2^{m-3}}, (d,c)=1, (c,a)=d"},
      {"G18", {"m"}, "m >= 4", "a^{2^{m-2}}=d^2=1, c^2=d, (d,a)=a^{2^{m-3}}, (c,a)=a^2 d"},
      {"G22", {"m"}, "m >= 6",
       "a^{2^{m-2}}=c^2=d^2=1, (d,a)=1, (d,c)=a^{2^{m-3}}, (c,a)=a^{-2^{m-4}} d"},
      {"G23", {"m"}, "m >= 6",
       "a^{2^{m-2}}=c^2=d^2=1, (d,a)=1, (d,c)=a^{2^{m-3}}, (c,a)=a^{2-2^{m-4}} d"},
      {"G24", {"m"}, "m >= 6",
       "a^{2^{m-2}}=c^2=d^2=1, (d,c)=1, (d,a)=a^{2^{m-3}}, (c,a)=a^{2-2^{m-4}} d"},
      {"G25", {"m"}, "m >= 5",
       "a^{2^{m-2}}=d^2=1, c^2=a^{2^{m-3}}, (d,c)=1, (d,a)=a^{2^{m-3}}, (c,a)=a^{2-2^{m-4}} d"},
      {"miech", {"p", "m1", "m2", "m3", "R", "r", "S", "s"}, "any; validated after construction",
       "d=(c,a), a^{p^{m1}}=d^{Rp^r}, c^{p^{m2}}=d^{Sp^s}, d^{p^{m3}}=1, d central"},
  };
  return kEntries;
}

PcPresentation catalog(const std::string& name, const Params& params) {
  const auto& entries = catalog_entries();
  if (std::none_of(entries.begin(), entries.end(),
                   [&](const CatalogEntry& e) { return e.name == name; })) {
    throw Error(ErrorCode::kUnknownGroup, "unknown group '" + name + "'");
  }
  if (name == "C") return cyclic(get(params, "p"), get(params, "n"));
  if (name == "D") return dihedral(get(params, "n"));
  if (name == "Q") return quaternion(get(params, "n"));
  if (name == "SD") return semidihedral(get(params, "n"));
  if (name == "M") return modular(get(params, "p"), get(params, "n"));
  if (name == "G1" || name == "G7" || name == "H" || name == "G11odd") {
    return odd_group(name, params);
  }
  if (name == "G2" || name == "G3") {
    const long long m = get(params, "m");
    require(m >= 4, name + " requires m >= 4");
    require_size(2, m);
    PcPresentation base = name == "G2" ? quaternion(m - 1) : dihedral(m - 1);
    PcPresentation out = direct_product(base, cyclic(2, 1));
    out.label = label(name, {{"m", m}});
    out.params = {{"m", m}};
    return out;
  }
  if (name == "miech") return miech(params);
  if (name.size() >= 2 && name[0] == 'G' && std::isdigit(static_cast<unsigned char>(name[1]))) {
    return two_group(name, get(params, "m"));
  }
  throw Error(ErrorCode::kUnknownGroup, "unknown group '" + name + "'");
}

PcPresentation parse_group_spec(const std::string& spec, const Params& params) {
  if (spec.empty()) throw Error(ErrorCode::kUnknownGroup, "empty group name");
  std::vector<std::string> factors;
  std::string current;
  for (char ch : spec) {
    if (ch == 'x' || ch == '*') {
      factors.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  factors.push_back(current);
  if (factors.size() == 1) {
    PcPresentation out;
    if (parse_short(spec, out)) return out;
    return catalog(spec, params);
  }
  PcPresentation acc;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    PcPresentation f;
    if (!parse_short(factors[i], f)) {
      throw Error(ErrorCode::kUnknownGroup,
                  "direct product factors must be short names like C2, D8, Q8: '" + factors[i] + "'");
    }
    acc = i == 0 ? std::move(f) : direct_product(acc, f);
  }
  return acc;
}

}  // namespace kgb
