#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace conespec {

enum class BoundaryCondition { Dirichlet, Neumann };

const char* to_string(BoundaryCondition bc) noexcept;

/// The two-point sphere S^0; its cone is the real line.
struct AtomS0 {
  bool operator==(const AtomS0&) const = default;
};

/// The one-point set T^0; its cone is the half-line.
struct AtomT0 {
  bool operator==(const AtomT0&) const = default;
};

/// Whole sphere S^{n-1}.
struct Sphere {
  int n;
  bool operator==(const Sphere&) const = default;
};

/// All-right-angle polytope T^{n-1} covering 2^-n of S^{n-1}.
struct TDomain {
  int n;
  bool operator==(const TDomain&) const = default;
};

/// Half of S^{n-1}.
struct HalfSphere {
  int n;
  bool operator==(const HalfSphere&) const = default;
};

/// Circular arc of opening angle `angle` on S^1.
struct Arc {
  double angle;
  bool operator==(const Arc&) const = default;
};

/// Regular distortion of T^{n-1}: all boundary normals at angle arccos(rho).
struct RegularT {
  int n;
  double rho;
  bool operator==(const RegularT&) const = default;
};

/// Geodesic ball of angular radius theta on S^{n-1}.
struct Cap {
  double theta;
  int n = 3;
  bool operator==(const Cap&) const = default;
};

/// Sector of a cap on S^2 with radius theta and opening angle phi at the centre.
struct Sector {
  double theta;
  double phi;
  bool operator==(const Sector&) const = default;
};

class DomainExpr;

/// Flattened join (*-product); always holds at least two factors, none of
/// which is itself a Join.
struct Join {
  std::vector<DomainExpr> factors;
  bool operator==(const Join& other) const;
};

class DomainExpr {
 public:
  using Node = std::variant<AtomS0, AtomT0, Sphere, TDomain, HalfSphere, Arc, RegularT, Cap, Sector, Join>;

  /// Validates parameters; throws Error(Dimension) when out of range.
  DomainExpr(Node node);

  const Node& node() const noexcept { return node_; }
  int ambient_dim() const noexcept { return ambient_; }
  bool is_join() const noexcept { return std::holds_alternative<Join>(node_); }

  /// Factors of a join, or a single-element list holding this expression.
  std::vector<DomainExpr> factors() const;

  bool operator==(const DomainExpr& other) const { return node_ == other.node_; }

 private:
  Node node_;
  int ambient_ = 0;
};

/// Join of two expressions, flattened into one left-to-right factor list.
DomainExpr join(const DomainExpr& left, const DomainExpr& right);

/// Parses the domain-expression grammar. Throws ParseError on syntax errors and
/// Error(Dimension) when a parameter is out of range.
DomainExpr parse_domain(std::string_view text);

/// Canonical text form; parse_domain(print_domain(d)) == d.
std::string print_domain(const DomainExpr& d);

/// Rewrites named domains as joins of atoms where possible.
DomainExpr expand_named(const DomainExpr& d);

struct DomainCapabilities {
  int ambient_dim = 0;
  bool spectrum_exact = false;
  bool geometry_known = false;
};

DomainCapabilities capabilities(const DomainExpr& d);

}  // namespace conespec
