#include "domain.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>

#include "errors.hpp"

namespace conespec {

const char* to_string(BoundaryCondition bc) noexcept {
  return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
}

bool Join::operator==(const Join& other) const { return factors == other.factors; }

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void dimension_error(const std::string& what) { throw Error(ErrorCode::Dimension, what); }

void require_dim(int n, int minimum, const char* name) {
  if (n < minimum)
    dimension_error(std::string(name) + " requires n >= " + std::to_string(minimum) + ", got " +
                    std::to_string(n));
}

struct Validate {
  int operator()(const AtomS0&) const { return 1; }
  int operator()(const AtomT0&) const { return 1; }
  int operator()(const Sphere& s) const {
    require_dim(s.n, 1, "Sphere");
    return s.n;
  }
  int operator()(const TDomain& t) const {
    require_dim(t.n, 1, "T");
    return t.n;
  }
  int operator()(const HalfSphere& h) const {
    require_dim(h.n, 2, "HalfSphere");
    return h.n;
  }
  int operator()(const Arc& a) const {
    if (!(a.angle > 0.0 && a.angle < 2.0 * kPi)) dimension_error("Arc angle must lie in (0, 2pi)");
    return 2;
  }
  int operator()(const RegularT& r) const {
    require_dim(r.n, 2, "RegularT");
    if (!(r.rho >= 0.0 && r.rho < 1.0)) dimension_error("RegularT rho must lie in [0, 1)");
    return r.n;
  }
  int operator()(const Cap& c) const {
    require_dim(c.n, 2, "Cap");
    if (!(c.theta > 0.0 && c.theta < kPi)) dimension_error("Cap theta must lie in (0, pi)");
    return c.n;
  }
  int operator()(const Sector& s) const {
    if (!(s.theta > 0.0 && s.theta < kPi)) dimension_error("Sector theta must lie in (0, pi)");
    if (!(s.phi > 0.0 && s.phi < 2.0 * kPi)) dimension_error("Sector phi must lie in (0, 2pi)");
    return 3;
  }
  int operator()(const Join& j) const {
    if (j.factors.size() < 2) dimension_error("Join needs at least two factors");
    int n = 0;
    for (const auto& f : j.factors) {
      if (f.is_join()) dimension_error("Join factors must be flattened");
      n += f.ambient_dim();
    }
    return n;
  }
};

}  // namespace

DomainExpr::DomainExpr(Node node) : node_(std::move(node)) { ambient_ = std::visit(Validate{}, node_); }

std::vector<DomainExpr> DomainExpr::factors() const {
  if (const auto* j = std::get_if<Join>(&node_)) return j->factors;
  return {*this};
}

DomainExpr join(const DomainExpr& left, const DomainExpr& right) {
  Join j;
  for (const auto& f : left.factors()) j.factors.push_back(f);
  for (const auto& f : right.factors()) j.factors.push_back(f);
  return DomainExpr(std::move(j));
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Printer {
  std::string operator()(const AtomS0&) const { return "S0"; }
  std::string operator()(const AtomT0&) const { return "T0"; }
  std::string operator()(const Sphere& s) const { return "Sphere(" + std::to_string(s.n) + ")"; }
  std::string operator()(const TDomain& t) const { return "T(" + std::to_string(t.n) + ")"; }
  std::string operator()(const HalfSphere& h) const { return "HalfSphere(" + std::to_string(h.n) + ")"; }
  std::string operator()(const Arc& a) const { return "Arc(angle=" + format_number(a.angle) + ")"; }
  std::string operator()(const RegularT& r) const {
    return "RegularT(" + std::to_string(r.n) + ", rho=" + format_number(r.rho) + ")";
  }
  std::string operator()(const Cap& c) const {
    std::string out = "Cap(theta=" + format_number(c.theta);
    if (c.n != 3) out += ", n=" + std::to_string(c.n);
    return out + ")";
  }
  std::string operator()(const Sector& s) const {
    return "Sector(theta=" + format_number(s.theta) + ", phi=" + format_number(s.phi) + ")";
  }
  std::string operator()(const Join& j) const {
    std::string out;
    for (std::size_t i = 0; i < j.factors.size(); ++i) {
      if (i) out += " * ";
      out += print_domain(j.factors[i]);
    }
    return out;
  }
};

}  // namespace

std::string print_domain(const DomainExpr& d) { return std::visit(Printer{}, d.node()); }

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, Number, Star, LParen, RParen, Comma, Equals, Slash, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
  double number = 0.0;
};

const std::vector<std::string> kTermStart = {"S0",  "T0",       "Sphere", "T",   "HalfSphere",
                                             "Arc", "RegularT", "Cap",    "Sector", "("};

struct ParamInfo {
  std::string name;
  bool integer;
  std::optional<double> fallback;
};

const std::map<std::string, std::vector<ParamInfo>, std::less<>>& named_params() {
  static const std::map<std::string, std::vector<ParamInfo>, std::less<>> table = {
      {"Sphere", {{"n", true, std::nullopt}}},
      {"T", {{"n", true, std::nullopt}}},
      {"HalfSphere", {{"n", true, std::nullopt}}},
      {"Arc", {{"angle", false, std::nullopt}}},
      {"RegularT", {{"n", true, std::nullopt}, {"rho", false, std::nullopt}}},
      {"Cap", {{"theta", false, std::nullopt}, {"n", true, 3.0}}},
      {"Sector", {{"theta", false, std::nullopt}, {"phi", false, std::nullopt}}},
  };
  return table;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  DomainExpr parse() {
    DomainExpr e = expr();
    if (cur_.kind != Tok::End) fail({"*", "end of input"}, "unexpected token");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, {}, 0};

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what) const {
    std::string msg = what;
    if (cur_.kind == Tok::End)
      msg += " (end of input)";
    else
      msg += " '" + std::string(cur_.text) + "'";
    throw ParseError(cur_.offset, std::move(expected), msg);
  }

  static bool is_ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  void advance() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      cur_ = Token{Tok::End, {}, start};
      return;
    }
    const char c = text_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      cur_ = Token{k, text_.substr(start, 1), start};
    };
    switch (c) {
      case '*': return single(Tok::Star);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      case '=': return single(Tok::Equals);
      case '/': return single(Tok::Slash);
      default: break;
    }
    if (is_ident_start(c)) {
      while (pos_ < text_.size() && (is_ident_start(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
      cur_ = Token{Tok::Ident, text_.substr(start, pos_ - start), start};
      return;
    }
    if (is_digit(c) || c == '.' || c == '-' || c == '+') {
      double value = 0.0;
      const char* first = text_.data() + start;
      if (*first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), value);
      if (ec != std::errc() || ptr == first) {
        cur_ = Token{Tok::End, text_.substr(start, 1), start};
        throw ParseError(start, {"number"}, "malformed number");
      }
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      cur_ = Token{Tok::Number, text_.substr(start, pos_ - start), start, value};
      return;
    }
    cur_ = Token{Tok::End, text_.substr(start, 1), start};
    throw ParseError(start, {}, "unexpected character '" + std::string(1, c) + "'");
  }

  DomainExpr expr() {
    DomainExpr left = term();
    while (cur_.kind == Tok::Star) {
      advance();
      left = join(left, term());
    }
    return left;
  }

  DomainExpr term() {
    if (cur_.kind == Tok::LParen) {
      advance();
      DomainExpr inner = expr();
      if (cur_.kind != Tok::RParen) fail({")", "*"}, "expected ')'");
      advance();
      return inner;
    }
    if (cur_.kind != Tok::Ident) fail(kTermStart, "expected a domain");
    const Token ident = cur_;
    if (ident.text == "S0") {
      advance();
      return DomainExpr(AtomS0{});
    }
    if (ident.text == "T0") {
      advance();
      return DomainExpr(AtomT0{});
    }
    const auto it = named_params().find(ident.text);
    if (it == named_params().end()) fail(kTermStart, "unknown domain");
    advance();
    if (cur_.kind != Tok::LParen) fail({"("}, "expected '('");
    advance();
    const std::vector<double> values = arglist(it->second);
    return build(ident, values);
  }

  std::vector<double> arglist(const std::vector<ParamInfo>& params) {
    std::vector<std::optional<double>> slots(params.size());
    std::size_t positional = 0;
    bool seen_key = false;
    while (true) {
      std::size_t slot = params.size();
      const Token at = cur_;
      if (cur_.kind == Tok::Ident && cur_.text != "pi") {
        for (std::size_t i = 0; i < params.size(); ++i)
          if (params[i].name == cur_.text) slot = i;
        if (slot == params.size()) {
          std::vector<std::string> keys;
          for (const auto& p : params) keys.push_back(p.name + "=");
          fail(keys, "unknown parameter");
        }
        advance();
        if (cur_.kind != Tok::Equals) fail({"="}, "expected '='");
        advance();
        seen_key = true;
      } else {
        if (seen_key) fail({"key="}, "positional argument after keyword argument");
        if (positional >= params.size()) fail({")"}, "too many arguments");
        slot = positional++;
      }
      if (slots[slot]) throw ParseError(at.offset, {}, "duplicate parameter '" + params[slot].name + "'");
      const Token value_tok = cur_;
      const double v = number();
      if (params[slot].integer && v != std::floor(v))
        throw ParseError(value_tok.offset, {"integer"}, "parameter '" + params[slot].name + "' must be an integer");
      slots[slot] = v;
      if (cur_.kind == Tok::Comma) {
        advance();
        continue;
      }
      if (cur_.kind != Tok::RParen) fail({",", ")"}, "expected ',' or ')'");
      break;
    }
    std::vector<double> values;
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (!slots[i]) {
        if (!params[i].fallback) fail({params[i].name + "="}, "missing parameter '" + params[i].name + "'");
        slots[i] = params[i].fallback;
      }
      values.push_back(*slots[i]);
    }
    advance();  // ')'
    return values;
  }

  // number := float [ "*" "pi" ] [ "/" float ] | "pi" [ "/" float ]
  double number() {
    double value = 0.0;
    if (cur_.kind == Tok::Ident && cur_.text == "pi") {
      value = kPi;
      advance();
    } else if (cur_.kind == Tok::Number) {
      value = cur_.number;
      advance();
      if (cur_.kind == Tok::Star) {
        advance();
        if (!(cur_.kind == Tok::Ident && cur_.text == "pi")) fail({"pi"}, "expected 'pi'");
        value *= kPi;
        advance();
      }
    } else {
      fail({"number", "pi"}, "expected a number");
    }
    if (cur_.kind == Tok::Slash) {
      advance();
      if (cur_.kind != Tok::Number) fail({"number"}, "expected a divisor");
      if (cur_.number == 0.0) fail({"nonzero number"}, "division by zero");
      value /= cur_.number;
      advance();
    }
    return value;
  }

  static DomainExpr build(const Token& ident, const std::vector<double>& v) {
    const std::string_view name = ident.text;
    auto as_int = [](double x) { return static_cast<int>(x); };
    if (name == "Sphere") return DomainExpr(Sphere{as_int(v[0])});
    if (name == "T") return DomainExpr(TDomain{as_int(v[0])});
    if (name == "HalfSphere") return DomainExpr(HalfSphere{as_int(v[0])});
    if (name == "Arc") return DomainExpr(Arc{v[0]});
    if (name == "RegularT") return DomainExpr(RegularT{as_int(v[0]), v[1]});
    if (name == "Cap") return DomainExpr(Cap{v[0], as_int(v[1])});
    return DomainExpr(Sector{v[0], v[1]});
  }
};

}  // namespace

DomainExpr parse_domain(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Expansion and classification

namespace {

DomainExpr join_of(std::vector<DomainExpr> factors) {
  if (factors.size() == 1) return factors.front();
  return DomainExpr(Join{std::move(factors)});
}

DomainExpr repeat_atoms(int s0_count, int t0_count) {
  std::vector<DomainExpr> f;
  for (int i = 0; i < s0_count; ++i) f.emplace_back(AtomS0{});
  for (int i = 0; i < t0_count; ++i) f.emplace_back(AtomT0{});
  return join_of(std::move(f));
}

struct Expander {
  DomainExpr operator()(const AtomS0& a) const { return DomainExpr(a); }
  DomainExpr operator()(const AtomT0& a) const { return DomainExpr(a); }
  DomainExpr operator()(const Sphere& s) const { return repeat_atoms(s.n, 0); }
  DomainExpr operator()(const TDomain& t) const { return repeat_atoms(0, t.n); }
  DomainExpr operator()(const HalfSphere& h) const { return repeat_atoms(h.n - 1, 1); }
  DomainExpr operator()(const Arc& a) const { return DomainExpr(a); }
  DomainExpr operator()(const RegularT& r) const {
    if (r.n == 2) return DomainExpr(Arc{std::acos(-r.rho)});
    if (r.rho == 0.0) return repeat_atoms(0, r.n);
    return DomainExpr(r);
  }
  DomainExpr operator()(const Cap& c) const { return DomainExpr(c); }
  DomainExpr operator()(const Sector& s) const { return DomainExpr(s); }
  DomainExpr operator()(const Join& j) const {
    std::vector<DomainExpr> out;
    for (const auto& f : j.factors)
      for (const auto& g : expand_named(f).factors()) out.push_back(g);
    return join_of(std::move(out));
  }
};

bool is_atom(const DomainExpr& d) {
  return std::holds_alternative<AtomS0>(d.node()) || std::holds_alternative<AtomT0>(d.node()) ||
         std::holds_alternative<Arc>(d.node());
}

}  // namespace

DomainExpr expand_named(const DomainExpr& d) { return std::visit(Expander{}, d.node()); }

DomainCapabilities capabilities(const DomainExpr& d) {
  DomainCapabilities caps;
  caps.ambient_dim = d.ambient_dim();
  const DomainExpr expanded = expand_named(d);
  bool all_atoms = true;
  for (const auto& f : expanded.factors()) all_atoms = all_atoms && is_atom(f);
  caps.spectrum_exact = all_atoms;
  // Irreducible named domains carry their own geometry; joins need atom factors
  // so faces and corner loci can be enumerated.
  const bool named_irreducible = !d.is_join() && !is_atom(expanded) && !expanded.is_join();
  caps.geometry_known = caps.ambient_dim >= 2 && (all_atoms || named_irreducible);
  return caps;
}

}  // namespace conespec
