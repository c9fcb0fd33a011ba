#include "conemod/p2_cohomology.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "conemod/errors.hpp"

namespace conemod {

namespace {

long long binomial(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long v = 1;
  for (long long i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

ChernCharacter ch_line(long long k) { return {1, Rational(k), Rational(k) * k / 2}; }

ChernCharacter ch_dual(const ChernCharacter& a) { return {a.rank, -a.c1, a.ch2}; }

ChernCharacter ch_sum(const ChernCharacter& a, const ChernCharacter& b) {
  return {a.rank + b.rank, a.c1 + b.c1, a.ch2 + b.ch2};
}

// Product truncated at degree 2 (H^3 = 0 on P^2).
ChernCharacter ch_tensor(const ChernCharacter& a, const ChernCharacter& b) {
  return {a.rank * b.rank, Rational(a.rank) * b.c1 + Rational(b.rank) * a.c1,
          Rational(a.rank) * b.ch2 + a.c1 * b.c1 + Rational(b.rank) * a.ch2};
}

bool chern_equal(const ChernCharacter& a, const ChernCharacter& b) {
  return a.rank == b.rank && a.c1 == b.c1 && a.ch2 == b.ch2;
}

// ---- text grammar ----------------------------------------------------------

struct Parser {
  std::string s;
  size_t pos = 0;

  explicit Parser(std::string text) : s(std::move(text)) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      fail(ErrorKind::Validation, std::string("expected '") + c + "' at position " +
                                      std::to_string(pos) + " in bundle expression");
  }
  std::string ident() {
    skip();
    size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    return s.substr(start, pos - start);
  }
  long long integer() {
    skip();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos || (pos - start == 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail(ErrorKind::Validation, "expected an integer at position " + std::to_string(start));
    return std::stoll(s.substr(start, pos - start));
  }
  Rational rational() {
    skip();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/' || s[pos] == '.'))
      ++pos;
    if (start == pos) fail(ErrorKind::Validation, "expected a number at position " + std::to_string(start));
    return parse_rational(s.substr(start, pos - start));
  }

  BundleExpr expr() {
    BundleExpr first = term();
    std::vector<BundleExpr> parts;
    parts.push_back(std::move(first));
    while (eat('+')) parts.push_back(term());
    if (parts.size() == 1) return std::move(parts.front());
    return BundleExpr::sum(std::move(parts));
  }

  BundleExpr term() {
    BundleExpr e = atom();
    while (true) {
      skip();
      size_t save = pos;
      if (!eat('(')) break;
      long long l = integer();
      expect(')');
      (void)save;
      e = BundleExpr::twist(std::move(e), l);
    }
    return e;
  }

  BundleExpr atom() {
    skip();
    if (eat('(')) {
      BundleExpr e = expr();
      expect(')');
      return e;
    }
    std::string name = ident();
    if (name == "O") {
      expect('(');
      long long k = integer();
      expect(')');
      return BundleExpr::line(k);
    }
    if (name == "T") return BundleExpr::tangent();
    if (name == "Omega") return BundleExpr::cotangent();
    if (name == "End") {
      expect('(');
      BundleExpr e = expr();
      expect(')');
      return BundleExpr::end(std::move(e));
    }
    if (name == "dual") {
      expect('(');
      BundleExpr e = expr();
      expect(')');
      return BundleExpr::dual(std::move(e));
    }
    if (name == "abstract") return abstract();
    fail(ErrorKind::Validation, "unknown bundle atom '" + name + "'");
  }

  BundleExpr abstract() {
    expect('(');
    ChernData data;
    bool have_r = false, have_c1 = false, have_c2 = false, have_stability = false;
    while (true) {
      std::string key = ident();
      if (key == "stable") {
        data.stable = true;
        data.summands = 1;
        have_stability = true;
      } else if (key == "unstable") {
        data.stable = false;
        have_stability = true;
      } else if (key == "polystable") {
        expect('=');
        long long sc = integer();
        if (sc < 1) fail(ErrorKind::Validation, "polystable summand count must be >= 1");
        data.stable = true;
        data.summands = static_cast<int>(sc);
        have_stability = true;
      } else if (key == "r") {
        expect('=');
        data.rank = integer();
        have_r = true;
      } else if (key == "c1") {
        expect('=');
        data.c1 = rational();
        have_c1 = true;
      } else if (key == "c2") {
        expect('=');
        data.c2 = rational();
        have_c2 = true;
      } else if (key == "h0end") {
        expect('=');
        std::array<long long, 4> ov{};
        for (int i = 0; i < 4; ++i) {
          ov[static_cast<size_t>(i)] = integer();
          if (i < 3) expect(':');
        }
        data.h0_end_overrides = ov;
      } else {
        fail(ErrorKind::Validation, "unknown abstract(...) key '" + key + "'");
      }
      if (eat(')')) break;
      expect(',');
    }
    if (!have_r || !have_c1 || !have_c2)
      fail(ErrorKind::Validation, "abstract(...) needs r=, c1=, c2=");
    if (!have_stability && !data.h0_end_overrides)
      fail(ErrorKind::Validation, "abstract(...) needs stable, polystable=s, or unstable");
    if (data.rank < 1) fail(ErrorKind::Validation, "abstract rank must be >= 1");
    if (!is_integer(data.c1))
      fail(ErrorKind::Validation, "c1 must be an integer multiple of the hyperplane class");
    return BundleExpr::abstract_bundle(std::move(data));
  }
};

// ---- Bott normal form ------------------------------------------------------

// (p, k) pairs with p in {0, 1}; T is Omega(3) on P^2, dual(Omega(k)) = Omega(3-k).
std::optional<std::vector<std::pair<int, long long>>> bott_leaves(const BundleExpr& e);

std::optional<std::vector<std::pair<int, long long>>> bott_leaves_children(
    const BundleExpr& e) {
  std::vector<std::pair<int, long long>> acc;
  for (const auto& child : e.children) {
    auto leaves = bott_leaves(child);
    if (!leaves) return std::nullopt;
    acc.insert(acc.end(), leaves->begin(), leaves->end());
  }
  return acc;
}

std::optional<std::vector<std::pair<int, long long>>> bott_leaves(const BundleExpr& e) {
  using Leaves = std::vector<std::pair<int, long long>>;
  switch (e.kind) {
    case BundleExpr::Kind::LineBundle:
      return Leaves{{0, e.k}};
    case BundleExpr::Kind::Tangent:
      return Leaves{{1, 3}};
    case BundleExpr::Kind::Cotangent:
      return Leaves{{1, 0}};
    case BundleExpr::Kind::Abstract:
      return std::nullopt;
    case BundleExpr::Kind::Twist: {
      auto inner = bott_leaves(e.children.front());
      if (!inner) return std::nullopt;
      for (auto& leaf : *inner) leaf.second += e.k;
      return inner;
    }
    case BundleExpr::Kind::Dual: {
      auto inner = bott_leaves(e.children.front());
      if (!inner) return std::nullopt;
      for (auto& leaf : *inner)
        leaf.second = (leaf.first == 0) ? -leaf.second : 3 - leaf.second;
      return inner;
    }
    case BundleExpr::Kind::Sum:
      return bott_leaves_children(e);
    case BundleExpr::Kind::End: {
      ChernCharacter ch = chern_character(e.children.front());
      if (ch.rank == 1) return Leaves{{0, 0}};  // End of a line bundle is O
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// ---- End-route pattern -----------------------------------------------------

struct EndPattern {
  const BundleExpr* inner = nullptr;  // E in (End E)(l)
  long long twist = 0;
};

std::optional<EndPattern> match_twisted_end(const BundleExpr& e, long long twist = 0) {
  switch (e.kind) {
    case BundleExpr::Kind::Twist:
      return match_twisted_end(e.children.front(), twist + e.k);
    case BundleExpr::Kind::Dual: {
      auto inner = match_twisted_end(e.children.front(), 0);
      if (!inner) return std::nullopt;
      // (End E)(m)^* = (End E)(-m): End is self-dual
      return EndPattern{inner->inner, twist - inner->twist};
    }
    case BundleExpr::Kind::End:
      return EndPattern{&e.children.front(), twist};
    default:
      return std::nullopt;
  }
}

struct StabilityInfo {
  bool asserted = false;  // stable or polystable
  long long h0_end = 1;   // h^0(End E): Hom counting over the summands
};

void flatten_sum(const BundleExpr& e, std::vector<const BundleExpr*>& out) {
  if (e.kind == BundleExpr::Kind::Sum) {
    for (const auto& c : e.children) flatten_sum(c, out);
  } else {
    out.push_back(&e);
  }
}

std::optional<StabilityInfo> stability_info(const BundleExpr& e);

std::optional<StabilityInfo> leaf_stability(const BundleExpr& e) {
  switch (e.kind) {
    case BundleExpr::Kind::LineBundle:
    case BundleExpr::Kind::Tangent:
    case BundleExpr::Kind::Cotangent:
      return StabilityInfo{true, 1};
    case BundleExpr::Kind::Abstract:
      if (!e.abstract.stable) return StabilityInfo{false, 0};
      return StabilityInfo{true, e.abstract.summands};
    case BundleExpr::Kind::Twist:
    case BundleExpr::Kind::Dual:
      return stability_info(e.children.front());
    default:
      return std::nullopt;  // End inside End, or a sum (handled by caller)
  }
}

std::optional<StabilityInfo> stability_info(const BundleExpr& e) {
  if (e.kind != BundleExpr::Kind::Sum) return leaf_stability(e);

  std::vector<const BundleExpr*> parts;
  flatten_sum(e, parts);
  Rational slope0;
  bool first = true;
  std::vector<ChernCharacter> cherns;
  for (const BundleExpr* part : parts) {
    auto info = stability_info(*part);
    if (!info) return std::nullopt;
    if (!info->asserted) return StabilityInfo{false, 0};
    if (info->h0_end != 1)
      fail(ErrorKind::InsufficientData,
           "nested polystable summands are not supported inside a direct sum");
    ChernCharacter ch = chern_character(*part);
    Rational slope = ch.c1 / ch.rank;
    if (first) {
      slope0 = slope;
      first = false;
    } else if (slope != slope0) {
      return StabilityInfo{false, 0};  // unequal slopes: not polystable
    }
    cherns.push_back(ch);
  }
  // Hom counting: group summands with identical Chern data.
  long long h0 = 0;
  std::vector<bool> counted(cherns.size(), false);
  for (size_t i = 0; i < cherns.size(); ++i) {
    if (counted[i]) continue;
    long long n = 0;
    for (size_t j = i; j < cherns.size(); ++j)
      if (!counted[j] && chern_equal(cherns[i], cherns[j])) {
        counted[j] = true;
        ++n;
      }
    h0 += n * n;
  }
  return StabilityInfo{true, h0};
}

}  // namespace

// ---- BundleExpr constructors -----------------------------------------------

BundleExpr BundleExpr::line(long long k) {
  BundleExpr e;
  e.kind = Kind::LineBundle;
  e.k = k;
  return e;
}
BundleExpr BundleExpr::tangent() {
  BundleExpr e;
  e.kind = Kind::Tangent;
  return e;
}
BundleExpr BundleExpr::cotangent() {
  BundleExpr e;
  e.kind = Kind::Cotangent;
  return e;
}
BundleExpr BundleExpr::abstract_bundle(ChernData data) {
  BundleExpr e;
  e.kind = Kind::Abstract;
  e.abstract = std::move(data);
  return e;
}
BundleExpr BundleExpr::dual(BundleExpr inner) {
  BundleExpr e;
  e.kind = Kind::Dual;
  e.children.push_back(std::move(inner));
  return e;
}
BundleExpr BundleExpr::twist(BundleExpr inner, long long l) {
  BundleExpr e;
  e.kind = Kind::Twist;
  e.k = l;
  e.children.push_back(std::move(inner));
  return e;
}
BundleExpr BundleExpr::sum(std::vector<BundleExpr> parts) {
  if (parts.empty()) fail(ErrorKind::Validation, "empty direct sum");
  BundleExpr e;
  e.kind = Kind::Sum;
  e.children = std::move(parts);
  return e;
}
BundleExpr BundleExpr::end(BundleExpr inner) {
  BundleExpr e;
  e.kind = Kind::End;
  e.children.push_back(std::move(inner));
  return e;
}

BundleExpr parse_bundle_expr(const std::string& text) {
  Parser parser(text);
  BundleExpr e = parser.expr();
  parser.skip();
  if (parser.pos != parser.s.size())
    fail(ErrorKind::Validation,
         "trailing input in bundle expression at position " + std::to_string(parser.pos));
  return e;
}

std::string format_bundle_expr(const BundleExpr& e) {
  switch (e.kind) {
    case BundleExpr::Kind::LineBundle:
      return "O(" + std::to_string(e.k) + ")";
    case BundleExpr::Kind::Tangent:
      return "T";
    case BundleExpr::Kind::Cotangent:
      return "Omega";
    case BundleExpr::Kind::Abstract: {
      std::ostringstream os;
      os << "abstract(r=" << e.abstract.rank << ",c1=" << format_rational(e.abstract.c1)
         << ",c2=" << format_rational(e.abstract.c2);
      if (e.abstract.stable)
        os << (e.abstract.summands > 1 ? ",polystable=" + std::to_string(e.abstract.summands)
                                       : std::string(",stable"));
      else
        os << ",unstable";
      if (e.abstract.h0_end_overrides) {
        os << ",h0end=";
        for (int i = 0; i < 4; ++i) os << (i ? ":" : "") << (*e.abstract.h0_end_overrides)[static_cast<size_t>(i)];
      }
      os << ")";
      return os.str();
    }
    case BundleExpr::Kind::Dual:
      return "dual(" + format_bundle_expr(e.children.front()) + ")";
    case BundleExpr::Kind::Twist:
      return format_bundle_expr(e.children.front()) + "(" + std::to_string(e.k) + ")";
    case BundleExpr::Kind::Sum: {
      std::string out;
      for (size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += "+";
        const auto& c = e.children[i];
        bool paren = c.kind == BundleExpr::Kind::Sum;
        out += paren ? "(" + format_bundle_expr(c) + ")" : format_bundle_expr(c);
      }
      return out;
    }
    case BundleExpr::Kind::End:
      return "End(" + format_bundle_expr(e.children.front()) + ")";
  }
  return "";
}

ChernCharacter chern_character(const BundleExpr& e) {
  switch (e.kind) {
    case BundleExpr::Kind::LineBundle:
      return ch_line(e.k);
    case BundleExpr::Kind::Tangent:
      return {2, Rational(3), Rational(3, 2)};
    case BundleExpr::Kind::Cotangent:
      return {2, Rational(-3), Rational(3, 2)};
    case BundleExpr::Kind::Abstract:
      return {e.abstract.rank, e.abstract.c1,
              (e.abstract.c1 * e.abstract.c1 - 2 * e.abstract.c2) / 2};
    case BundleExpr::Kind::Dual:
      return ch_dual(chern_character(e.children.front()));
    case BundleExpr::Kind::Twist:
      return ch_tensor(chern_character(e.children.front()), ch_line(e.k));
    case BundleExpr::Kind::Sum: {
      ChernCharacter acc{0, 0, 0};
      for (const auto& c : e.children) acc = ch_sum(acc, chern_character(c));
      return acc;
    }
    case BundleExpr::Kind::End: {
      ChernCharacter ch = chern_character(e.children.front());
      return ch_tensor(ch, ch_dual(ch));
    }
  }
  fail(ErrorKind::Validation, "malformed bundle expression");
}

long long euler_characteristic(const ChernCharacter& ch) {
  Rational chi = ch.ch2 + Rational(3, 2) * ch.c1 + ch.rank;
  if (!is_integer(chi))
    fail(ErrorKind::Inconsistency,
         "Euler characteristic " + format_rational(chi) + " is not an integer: Chern data inconsistent");
  return numerator(chi).template convert_to<long long>();
}

long long euler_characteristic(const BundleExpr& e) {
  return euler_characteristic(chern_character(e));
}

CohomologyVector bott_cohomology(int p, long long k) {
  if (p < 0 || p > 2) fail(ErrorKind::Validation, "Omega^p on P^2 needs p in {0, 1, 2}");
  CohomologyVector v;
  v.certainty = CohomologyVector::Certainty::Exact;
  if (k > p) {
    v.h0 = binomial(k + 2 - p, 2 - p) * binomial(k - 1, p);
  } else if (k == 0) {
    // H^p(P^2, Omega^p) = C
    if (p == 0)
      v.h0 = 1;
    else if (p == 1)
      v.h1 = 1;
    else
      v.h2 = 1;
  }
  if (k < p - 2) v.h2 = binomial(p - k, p) * binomial(-k - 1, 2 - p);
  return v;
}

CohomologyVector cohomology(const BundleExpr& expr) {
  if (auto leaves = bott_leaves(expr)) {
    CohomologyVector total;
    total.certainty = CohomologyVector::Certainty::Exact;
    for (auto [p, k] : *leaves) {
      CohomologyVector v = bott_cohomology(p, k);
      total.h0 += v.h0;
      total.h1 += v.h1;
      total.h2 += v.h2;
    }
    return total;
  }

  auto pattern = match_twisted_end(expr);
  if (!pattern)
    fail(ErrorKind::InsufficientData,
         "cohomology needs a Bott-expressible expression or a twisted End bundle (End E)(l)");

  const long long l = pattern->twist;
  if (l < -3 || l > 0)
    fail(ErrorKind::UnsupportedRange,
         "End twist " + std::to_string(l) +
             " outside [-3, 0]: stability vanishing does not apply there");

  const BundleExpr& inner = *pattern->inner;
  ChernCharacter inner_ch = chern_character(inner);
  if (inner_ch.rank < 1) fail(ErrorKind::Validation, "bundle rank must be positive");

  // h^0 by stability vanishing (or explicit overrides), h^2 by Serre duality
  // through the self-dual End, h^1 from the Euler characteristic.
  long long h0 = 0, h2 = 0;
  auto info = stability_info(inner);
  if (info && info->asserted) {
    h0 = (l == 0) ? info->h0_end : 0;
    h2 = (l == -3) ? info->h0_end : 0;
  } else {
    const ChernData* data =
        inner.kind == BundleExpr::Kind::Abstract ? &inner.abstract : nullptr;
    if (!data || !data->h0_end_overrides)
      fail(ErrorKind::InsufficientData,
           "stability not asserted and no h0end overrides supplied for " + format_bundle_expr(inner));
    const auto& ov = *data->h0_end_overrides;  // h^0((End E)(l)) for l = 0,-1,-2,-3
    h0 = ov[static_cast<size_t>(-l)];
    h2 = ov[static_cast<size_t>(3 + l)];
  }

  long long chi = euler_characteristic(expr);
  long long h1 = h0 + h2 - chi;
  if (h1 < 0)
    fail(ErrorKind::Inconsistency,
         "negative h^1 = " + std::to_string(h1) + " for " + format_bundle_expr(expr) +
             ": Chern data is not realizable under the asserted stability");

  CohomologyVector v;
  v.h0 = h0;
  v.h1 = h1;
  v.h2 = h2;
  v.certainty = CohomologyVector::Certainty::ConditionalOnStability;
  return v;
}

std::map<int, long long> kernel_dims_from_cohomology(const BundleExpr& expr) {
  ChernCharacter ch = chern_character(expr);
  Rational c2 = (ch.c1 * ch.c1 - 2 * ch.ch2) / 2;
  if (!is_integer(ch.c1) || !is_integer(c2))
    fail(ErrorKind::Validation, "kernel dimensions need integral Chern data (c1, c2 integers)");
  std::map<int, long long> dims;
  for (int nu = -4; nu <= -1; ++nu) {
    CohomologyVector v = cohomology(BundleExpr::twist(BundleExpr::end(expr), nu + 1));
    dims[nu] = 2 * v.h1;
  }
  return dims;
}

}  // namespace conemod
