#include "growthmech/expr.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace growthmech {

namespace {
enum class Kind { Const, Var, Radius, Add, Sub, Mul, Div, Neg, Pow, Call };
enum class Fun { Exp, Ln, Cos, Sin };
}  // namespace

struct Expr::Node {
    Kind kind;
    double value = 0;    // Const
    int var = 0;         // Var: 0..2 = X1..X3, 3 = t
    int exponent = 1;    // Pow
    Fun fun = Fun::Exp;  // Call
    std::shared_ptr<const Node> a, b;

    static std::shared_ptr<const Node> cnst(double v) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Const;
        n->value = v;
        return n;
    }
    static std::shared_ptr<const Node> mk(Kind k, std::shared_ptr<const Node> a,
                                          std::shared_ptr<const Node> b = nullptr) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }
};

namespace {
using NodePtr = std::shared_ptr<const Expr::Node>;
using Node = Expr::Node;

struct Env {
    Eigen::Vector3d x;
    double t;
};

double eval_node(const Node& n, const Env& e) {
    switch (n.kind) {
        case Kind::Const: return n.value;
        case Kind::Var: return n.var == 3 ? e.t : e.x[n.var];
        case Kind::Radius: return e.x.norm();
        case Kind::Add: return eval_node(*n.a, e) + eval_node(*n.b, e);
        case Kind::Sub: return eval_node(*n.a, e) - eval_node(*n.b, e);
        case Kind::Mul: return eval_node(*n.a, e) * eval_node(*n.b, e);
        case Kind::Div: return eval_node(*n.a, e) / eval_node(*n.b, e);
        case Kind::Neg: return -eval_node(*n.a, e);
        case Kind::Pow: return std::pow(eval_node(*n.a, e), n.exponent);
        case Kind::Call: {
            const double v = eval_node(*n.a, e);
            switch (n.fun) {
                case Fun::Exp: return std::exp(v);
                case Fun::Ln: return std::log(v);
                case Fun::Cos: return std::cos(v);
                case Fun::Sin: return std::sin(v);
            }
        }
    }
    return 0;
}

bool is_zero(const NodePtr& n) { return n->kind == Kind::Const && n->value == 0.0; }
bool is_one(const NodePtr& n) { return n->kind == Kind::Const && n->value == 1.0; }

NodePtr add(NodePtr a, NodePtr b) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    return Node::mk(Kind::Add, std::move(a), std::move(b));
}
NodePtr sub(NodePtr a, NodePtr b) {
    if (is_zero(b)) return a;
    if (is_zero(a)) return Node::mk(Kind::Neg, std::move(b));
    return Node::mk(Kind::Sub, std::move(a), std::move(b));
}
NodePtr mul(NodePtr a, NodePtr b) {
    if (is_zero(a) || is_zero(b)) return Node::cnst(0);
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    return Node::mk(Kind::Mul, std::move(a), std::move(b));
}
NodePtr divn(NodePtr a, NodePtr b) {
    if (is_zero(a)) return Node::cnst(0);
    if (is_one(b)) return a;
    return Node::mk(Kind::Div, std::move(a), std::move(b));
}
NodePtr powi(NodePtr a, int k) {
    if (k == 0) return Node::cnst(1);
    if (k == 1) return a;
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pow;
    n->a = std::move(a);
    n->exponent = k;
    return n;
}
NodePtr call(Fun f, NodePtr a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->fun = f;
    n->a = std::move(a);
    return n;
}

NodePtr diff_node(const NodePtr& n, int var) {
    switch (n->kind) {
        case Kind::Const: return Node::cnst(0);
        case Kind::Var: return Node::cnst(n->var == var ? 1.0 : 0.0);
        case Kind::Radius: {
            if (var == 3) return Node::cnst(0);
            auto xi = std::make_shared<Node>();
            xi->kind = Kind::Var;
            xi->var = var;
            auto r = std::make_shared<Node>();
            r->kind = Kind::Radius;
            return divn(xi, r);  // dR/dXi = Xi / R
        }
        case Kind::Add: return add(diff_node(n->a, var), diff_node(n->b, var));
        case Kind::Sub: return sub(diff_node(n->a, var), diff_node(n->b, var));
        case Kind::Mul:
            return add(mul(diff_node(n->a, var), n->b), mul(n->a, diff_node(n->b, var)));
        case Kind::Div:
            return divn(sub(mul(diff_node(n->a, var), n->b), mul(n->a, diff_node(n->b, var))),
                        powi(n->b, 2));
        case Kind::Neg: return Node::mk(Kind::Neg, diff_node(n->a, var));
        case Kind::Pow:
            return mul(mul(Node::cnst(n->exponent), powi(n->a, n->exponent - 1)),
                       diff_node(n->a, var));
        case Kind::Call: {
            NodePtr da = diff_node(n->a, var);
            switch (n->fun) {
                case Fun::Exp: return mul(call(Fun::Exp, n->a), da);
                case Fun::Ln: return divn(da, n->a);
                case Fun::Cos: return Node::mk(Kind::Neg, mul(call(Fun::Sin, n->a), da));
                case Fun::Sin: return mul(call(Fun::Cos, n->a), da);
            }
        }
    }
    return Node::cnst(0);
}

bool depends_on(const NodePtr& n, int var) {
    switch (n->kind) {
        case Kind::Const: return false;
        case Kind::Var: return n->var == var;
        case Kind::Radius: return var != 3;
        case Kind::Neg:
        case Kind::Pow:
        case Kind::Call: return depends_on(n->a, var);
        default: return depends_on(n->a, var) || depends_on(n->b, var);
    }
}

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ < s_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream msg;
        msg << "parse error at col " << pos_ + 1 << ": " << what;
        throw usage_error(msg.str());
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr e = term();
        for (;;) {
            if (eat('+'))
                e = add(e, term());
            else if (eat('-'))
                e = sub(e, term());
            else
                return e;
        }
    }

    NodePtr term() {
        NodePtr e = factor();
        for (;;) {
            if (eat('*'))
                e = mul(e, factor());
            else if (eat('/'))
                e = divn(e, factor());
            else
                return e;
        }
    }

    NodePtr factor() {
        if (eat('-')) return Node::mk(Kind::Neg, factor());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (eat('^')) {
            skip_ws();
            bool neg = eat('-');
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == start) fail("expected integer exponent after '^'");
            int k = std::stoi(s_.substr(start, pos_ - start));
            if (neg) return divn(Node::cnst(1), powi(base, k));
            return powi(base, k);
        }
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        if (eat('(')) {
            NodePtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        std::size_t end = pos_;
        while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) ||
                                   s_[end] == '.' || s_[end] == 'e' || s_[end] == 'E' ||
                                   ((s_[end] == '+' || s_[end] == '-') && end > pos_ &&
                                    (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
            ++end;
        try {
            std::size_t used = 0;
            const double v = std::stod(s_.substr(pos_, end - pos_), &used);
            pos_ += used;
            return Node::cnst(v);
        } catch (const std::exception&) {
            fail("malformed number");
        }
    }

    NodePtr identifier() {
        std::size_t end = pos_;
        while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])))) ++end;
        const std::string name = s_.substr(pos_, end - pos_);
        pos_ = end;
        if (name == "R") {
            auto n = std::make_shared<Node>();
            n->kind = Kind::Radius;
            return n;
        }
        if (name == "t") {
            auto n = std::make_shared<Node>();
            n->kind = Kind::Var;
            n->var = 3;
            return n;
        }
        if (name == "X1" || name == "X2" || name == "X3") {
            auto n = std::make_shared<Node>();
            n->kind = Kind::Var;
            n->var = name[1] - '1';
            return n;
        }
        Fun fun;
        if (name == "exp")
            fun = Fun::Exp;
        else if (name == "ln")
            fun = Fun::Ln;
        else if (name == "cos")
            fun = Fun::Cos;
        else if (name == "sin")
            fun = Fun::Sin;
        else
            fail("unknown identifier '" + name + "'");
        if (!eat('(')) fail("expected '(' after function name");
        NodePtr arg = expr();
        if (!eat(')')) fail("expected ')'");
        return call(fun, arg);
    }
};
}  // namespace

Expr Expr::parse(const std::string& text) {
    Expr e;
    e.root_ = Parser(text).run();
    e.text_ = text;
    return e;
}

Expr Expr::constant(double c) {
    Expr e;
    e.root_ = Node::cnst(c);
    std::ostringstream os;
    os << c;
    e.text_ = os.str();
    return e;
}

double Expr::eval(const Eigen::Vector3d& x, double t) const { return eval_node(*root_, {x, t}); }

Expr Expr::derivative(int var) const {
    Expr e;
    e.root_ = diff_node(root_, var);
    e.text_ = "d/d" + (var == 3 ? std::string("t") : "X" + std::to_string(var + 1)) + "(" + text_ +
              ")";
    return e;
}

bool Expr::depends_on_time() const { return depends_on(root_, 3); }

ScalarField Expr::as_field(int dim, double t) const {
    auto root = root_;
    std::array<NodePtr, 3> d1;
    std::array<std::array<NodePtr, 3>, 3> d2;
    for (int i = 0; i < dim; ++i) d1[i] = diff_node(root, i);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) d2[i][j] = diff_node(d1[i], j);
    return ScalarField(
        dim, [root, t](const Eigen::Vector3d& x) { return eval_node(*root, {x, t}); },
        [d1, dim, t](const Eigen::Vector3d& x) {
            Eigen::Vector3d g = Eigen::Vector3d::Zero();
            for (int i = 0; i < dim; ++i) g[i] = eval_node(*d1[i], {x, t});
            return g;
        },
        [d2, dim, t](const Eigen::Vector3d& x) {
            Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) h(i, j) = eval_node(*d2[i][j], {x, t});
            return h;
        });
}

Profile Expr::as_profile(double t) const {
    // Along the X1 axis (R > 0) the radius derivative collapses to d/dX1.
    auto root = root_;
    NodePtr d1 = diff_node(root, 0);
    NodePtr d2 = diff_node(d1, 0);
    auto at = [](double r) { return Eigen::Vector3d(r, 0, 0); };
    return Profile([root, t, at](double r) { return eval_node(*root, {at(r), t}); },
                   [d1, t, at](double r) { return eval_node(*d1, {at(r), t}); },
                   [d2, t, at](double r) { return eval_node(*d2, {at(r), t}); });
}

RadialTimeField Expr::as_radial_time_field() const {
    auto root = root_;
    NodePtr dR = diff_node(root, 0);
    NodePtr d2R = diff_node(dR, 0);
    NodePtr dt = diff_node(root, 3);
    auto at = [](double r) { return Eigen::Vector3d(r, 0, 0); };
    return RadialTimeField(
        [root, at](double r, double t) { return eval_node(*root, {at(r), t}); },
        [dR, at](double r, double t) { return eval_node(*dR, {at(r), t}); },
        [dt, at](double r, double t) { return eval_node(*dt, {at(r), t}); },
        [d2R, at](double r, double t) { return eval_node(*d2R, {at(r), t}); });
}

bool is_table_spec(const std::string& spec) { return !spec.empty() && spec[0] == '@'; }

Profile profile_from_table(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw usage_error("cannot open table file: " + csv_path);
    std::vector<double> xs, ys;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream row(line);
        double x, y;
        if (row >> x >> y) {
            xs.push_back(x);
            ys.push_back(y);
        }
    }
    const int n = static_cast<int>(xs.size());
    if (n < 3) throw usage_error("table needs at least 3 rows: " + csv_path);
    for (int i = 1; i < n; ++i)
        if (xs[i] <= xs[i - 1]) throw usage_error("table abscissae must increase: " + csv_path);

    // Natural cubic spline second derivatives (tridiagonal solve).
    std::vector<double> m(n, 0.0), u(n, 0.0), z(n, 0.0);
    std::vector<double> h(n - 1);
    for (int i = 0; i + 1 < n; ++i) h[i] = xs[i + 1] - xs[i];
    // Right-hand side for the second-derivative (M) form of the natural
    // spline system: h M_{i-1} + 2(h+h')M_i + h' M_{i+1} = 6 * (slope jump).
    std::vector<double> alpha(n, 0.0);
    for (int i = 1; i + 1 < n; ++i)
        alpha[i] = 6 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]);
    std::vector<double> l(n, 1.0), mu(n, 0.0);
    for (int i = 1; i + 1 < n; ++i) {
        l[i] = 2 * (xs[i + 1] - xs[i - 1]) - h[i - 1] * mu[i - 1];
        mu[i] = h[i] / l[i];
        z[i] = (alpha[i] - h[i - 1] * z[i - 1]) / l[i];
    }
    for (int i = n - 2; i >= 1; --i) m[i] = z[i] - mu[i] * m[i + 1];

    struct Spline {
        std::vector<double> x, y, m, h;
        int cell(double r) const {
            int lo = 0, hi = static_cast<int>(x.size()) - 2;
            if (r <= x.front()) return 0;
            if (r >= x.back()) return hi;
            while (lo < hi) {
                int mid = (lo + hi + 1) / 2;
                if (x[mid] <= r)
                    lo = mid;
                else
                    hi = mid - 1;
            }
            return lo;
        }
        double value(double r) const {
            const int i = cell(r);
            const double a = (x[i + 1] - r) / h[i], b = (r - x[i]) / h[i];
            return a * y[i] + b * y[i + 1] +
                   ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h[i] * h[i] / 6.0;
        }
        double deriv(double r) const {
            const int i = cell(r);
            const double a = (x[i + 1] - r) / h[i], b = (r - x[i]) / h[i];
            return (y[i + 1] - y[i]) / h[i] +
                   (-(3 * a * a - 1) * m[i] + (3 * b * b - 1) * m[i + 1]) * h[i] / 6.0;
        }
        double deriv2(double r) const {
            const int i = cell(r);
            const double a = (x[i + 1] - r) / h[i], b = (r - x[i]) / h[i];
            return a * m[i] + b * m[i + 1];
        }
    };
    auto sp = std::make_shared<Spline>(Spline{xs, ys, m, h});
    return Profile([sp](double r) { return sp->value(r); },
                   [sp](double r) { return sp->deriv(r); },
                   [sp](double r) { return sp->deriv2(r); });
}

}  // namespace growthmech
