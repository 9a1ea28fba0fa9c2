#pragma once

#include "growthmech/scalar_field.hpp"
#include "growthmech/types.hpp"

#include <memory>
#include <string>

namespace growthmech {

/// Tiny expression language for growth fields:
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := primary ('^' INTEGER)?
///   primary:= NUMBER | VAR | FUNC '(' expr ')' | '(' expr ')'
///
/// Variables: X1, X2, X3, t, and R = sqrt(X1^2 + X2^2 + X3^2).
/// Functions: exp, ln, cos, sin.
///
/// Expressions differentiate symbolically, so fields built from them carry
/// analytic first and second derivatives.
class Expr {
  public:
    struct Node;

    /// Throws usage_error with a 1-based column on malformed input.
    static Expr parse(const std::string& text);

    static Expr constant(double c);

    double eval(const Eigen::Vector3d& x, double t = 0.0) const;

    /// var: 0..2 for X1..X3, 3 for t.
    Expr derivative(int var) const;

    bool depends_on_time() const;
    const std::string& text() const { return text_; }

    ScalarField as_field(int dim, double t = 0.0) const;
    Profile as_profile(double t = 0.0) const;  // evaluated along X = (R, 0, 0), R > 0
    RadialTimeField as_radial_time_field() const;

  private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

/// Natural cubic spline through (R_i, f_i) samples read from a two-column CSV
/// (comment lines start with '#'). Derivatives come from the spline.
Profile profile_from_table(const std::string& csv_path);

/// CLI field specification: either an expression or "@file.csv" for a
/// tabulated profile.
bool is_table_spec(const std::string& spec);

}  // namespace growthmech
