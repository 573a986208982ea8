#include "plectic/parser.hpp"

#include <cctype>

namespace plectic {

Scalar ExprValue::as_scalar() const {
  if (auto* s = std::get_if<Scalar>(&v)) return *s;
  if (auto* f = std::get_if<CoefFn>(&v)) {
    auto c = f->constant_value();
    require(c.has_value(), Errc::NotRepresentable, "expression is not a constant scalar");
    return *c;
  }
  if (auto* w = std::get_if<Form>(&v)) {
    require(w->degree() == 0 || w->is_zero(), Errc::DegreeMismatch,
            "expected a scalar, got a degree-" + std::to_string(w->degree()) + " form");
    auto c = w->component({}).constant_value();
    require(c.has_value(), Errc::NotRepresentable, "expression is not a constant scalar");
    return *c;
  }
  fail(Errc::DegreeMismatch, "expected a scalar, got a field");
}

CoefFn ExprValue::as_function(const ChartPtr& chart) const {
  if (auto* s = std::get_if<Scalar>(&v)) return CoefFn::constant(chart, *s);
  if (auto* f = std::get_if<CoefFn>(&v)) {
    require_compatible(f->chart(), chart, "as_function");
    return *f;
  }
  if (auto* w = std::get_if<Form>(&v)) {
    require(w->degree() == 0 || w->is_zero(), Errc::DegreeMismatch,
            "expected a function, got a degree-" + std::to_string(w->degree()) + " form");
    require_compatible(w->chart(), chart, "as_function");
    return w->is_zero() ? CoefFn(chart) : w->component({});
  }
  fail(Errc::DegreeMismatch, "expected a function, got a field");
}

Form ExprValue::as_form(const ChartPtr& chart) const {
  if (auto* w = std::get_if<Form>(&v)) {
    require_compatible(w->chart(), chart, "as_form");
    return *w;
  }
  if (std::get_if<MultiVector>(&v))
    fail(Errc::DegreeMismatch, "expected a form, got a field");
  return form_from_function(as_function(chart));
}

MultiVector ExprValue::as_multivector(const ChartPtr& chart) const {
  if (auto* p = std::get_if<MultiVector>(&v)) {
    require_compatible(p->chart(), chart, "as_multivector");
    return *p;
  }
  CoefFn f = as_function(chart);  // throws on genuine forms
  MultiVector p(chart, 0);
  p.add_component({}, f);
  return p;
}

MultiVector ExprValue::as_field(const ChartPtr& chart) const {
  MultiVector p = as_multivector(chart);
  require(p.degree() == 1, Errc::DegreeMismatch,
          "expected a vector field, got degree " + std::to_string(p.degree()));
  return p;
}

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;

  explicit Lexer(const std::string& t) : text(t) { skip(); }

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    skip();
    return true;
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(Errc::ParseError, what + " at position " + std::to_string(pos) + " in '" + text + "'");
  }

  bool at_number() const { return std::isdigit(static_cast<unsigned char>(peek())); }

  Integer number() {
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) error("expected a number");
    Integer n(text.substr(start, pos - start));
    skip();
    return n;
  }

  bool at_name() const { return std::isalpha(static_cast<unsigned char>(peek())); }

  // alphabetic run plus trailing digits: "dx12", "tau", "E", "x0"
  std::pair<std::string, std::optional<int>> name() {
    size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string word = text.substr(start, pos - start);
    std::optional<int> index;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      size_t dstart = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      index = std::stoi(text.substr(dstart, pos - dstart));
    }
    skip();
    return {word, index};
  }
};

struct Parser {
  Lexer lex;
  ChartPtr chart;

  Parser(const std::string& text, ChartPtr c) : lex(text), chart(std::move(c)) {}

  int axis_index(const std::string& word, std::optional<int> index) {
    if (!chart) lex.error("'" + word + "' needs a chart");
    if (!index.has_value()) lex.error("'" + word + "' needs an axis index");
    if (*index < 0 || *index >= chart->dim)
      lex.error("axis " + std::to_string(*index) + " out of range for " + chart->name);
    return *index;
  }

  ExprValue atom() {
    if (lex.at_number()) return {Scalar(Rational(lex.number()))};
    if (lex.eat('(')) {
      ExprValue e = expr();
      if (!lex.eat(')')) lex.error("expected ')'");
      return e;
    }
    if (!lex.at_name()) lex.error("expected a value");
    auto [word, index] = lex.name();
    if (word == "tau" && !index.has_value()) return {Scalar::tau()};
    if (word == "i" && !index.has_value()) return {Scalar::i()};
    if (word == "x") return {CoefFn::coordinate(chart_or_fail(word), axis_index(word, index))};
    if (word == "dx") return {dx(chart_or_fail(word), axis_index(word, index))};
    if (word == "e") return {basis_field(chart_or_fail(word), axis_index(word, index))};
    if (word == "E" && !index.has_value()) {
      if (!lex.eat('[')) lex.error("expected '[' after E");
      std::vector<int> wave;
      if (!lex.eat(']')) {
        do {
          bool neg = lex.eat('-');
          Integer n = lex.number();
          wave.push_back(static_cast<int>(neg ? -n : n));
        } while (lex.eat(','));
        if (!lex.eat(']')) lex.error("expected ']'");
      }
      ChartPtr c = chart_or_fail(word);
      if (static_cast<int>(wave.size()) != c->dim)
        lex.error("E[...] needs " + std::to_string(c->dim) + " wave numbers");
      return {CoefFn::fourier(c, std::move(wave))};
    }
    lex.error("unknown name '" + word + (index ? std::to_string(*index) : "") + "'");
  }

  ChartPtr chart_or_fail(const std::string& word) {
    if (!chart) lex.error("'" + word + "' needs a chart");
    return chart;
  }

  ExprValue power() {
    ExprValue base = atom();
    while (lex.eat('^')) {
      // a signed integer exponent is a power, anything else a graded product
      bool neg = false;
      if (lex.peek() == '-' || lex.peek() == '+') {
        size_t save = lex.pos;
        neg = lex.text[lex.pos] == '-';
        ++lex.pos;
        lex.skip();
        if (!lex.at_number()) {
          lex.pos = save;
          lex.error("expected an exponent after '^'");
        }
        base = pow_value(base, static_cast<int>(lex.number()) * (neg ? -1 : 1));
        continue;
      }
      if (lex.at_number()) {
        base = pow_value(base, static_cast<int>(lex.number()));
        continue;
      }
      base = mul_value(base, atom());
    }
    return base;
  }

  ExprValue term() {
    ExprValue acc = power();
    while (true) {
      if (lex.eat('*')) {
        acc = mul_value(acc, power());
      } else if (lex.eat('/')) {
        acc = div_value(acc, power());
      } else {
        break;
      }
    }
    return acc;
  }

  ExprValue expr() {
    bool neg = false;
    while (lex.peek() == '+' || lex.peek() == '-') {
      if (lex.peek() == '-') neg = !neg;
      ++lex.pos;
      lex.skip();
    }
    ExprValue acc = term();
    if (neg) acc = neg_value(acc);
    while (true) {
      if (lex.eat('+')) {
        acc = add_value(acc, term());
      } else if (lex.eat('-')) {
        acc = add_value(acc, neg_value(term()));
      } else {
        break;
      }
    }
    return acc;
  }

  ExprValue parse() {
    ExprValue e = expr();
    if (!lex.done()) lex.error("trailing input");
    return e;
  }

  CoefFn promote(const Scalar& s) { return CoefFn::constant(chart_or_fail("constant"), s); }

  ExprValue mul_value(const ExprValue& a, const ExprValue& b) {
    return std::visit(
        [&](const auto& x, const auto& y) -> ExprValue {
          using X = std::decay_t<decltype(x)>;
          using Y = std::decay_t<decltype(y)>;
          if constexpr (std::is_same_v<X, Scalar> && std::is_same_v<Y, Scalar>)
            return {x * y};
          else if constexpr (std::is_same_v<X, Scalar>)
            return {x * y};
          else if constexpr (std::is_same_v<Y, Scalar>)
            return {y * x};
          else if constexpr (std::is_same_v<X, CoefFn> && std::is_same_v<Y, CoefFn>)
            return {x * y};
          else if constexpr (std::is_same_v<X, CoefFn>)
            return {x * y};
          else if constexpr (std::is_same_v<Y, CoefFn>)
            return {y * x};
          else if constexpr (std::is_same_v<X, Y>)
            return {wedge(x, y)};
          else
            fail(Errc::DegreeMismatch, "cannot multiply forms with fields");
        },
        a.v, b.v);
  }

  ExprValue neg_value(const ExprValue& a) {
    return std::visit([](const auto& x) -> ExprValue { return {-x}; }, a.v);
  }

  ExprValue add_value(const ExprValue& a, const ExprValue& b) {
    // promote to the most structured side
    if (std::holds_alternative<MultiVector>(a.v) || std::holds_alternative<MultiVector>(b.v)) {
      MultiVector x = a.as_multivector(chart_or_fail("sum"));
      return {x + b.as_multivector(chart)};
    }
    if (std::holds_alternative<Form>(a.v) || std::holds_alternative<Form>(b.v)) {
      Form x = a.as_form(chart_or_fail("sum"));
      return {x + b.as_form(chart)};
    }
    if (std::holds_alternative<CoefFn>(a.v) || std::holds_alternative<CoefFn>(b.v)) {
      CoefFn x = a.as_function(chart_or_fail("sum"));
      return {x + b.as_function(chart)};
    }
    return {a.as_scalar() + b.as_scalar()};
  }

  ExprValue invert(const ExprValue& a) {
    if (auto* s = std::get_if<Scalar>(&a.v)) {
      auto inv = s->inverse();
      require(inv.has_value(), Errc::NotDivisible, "scalar " + s->str() + " is not invertible");
      return {*inv};
    }
    if (auto* f = std::get_if<CoefFn>(&a.v)) {
      // invertible functions are single fourier modes with unit coefficient ring element
      if (f->terms().size() == 1) {
        auto& [m, c] = *f->terms().begin();
        bool poly = false;
        for (int e : m.alpha) poly = poly || e != 0;
        auto cinv = c.inverse();
        if (!poly && cinv.has_value()) {
          Monomial inv_m = m;
          for (auto& w : inv_m.wave) w = -w;
          CoefFn r(f->chart());
          r.add_term(std::move(inv_m), *cinv);
          return {r};
        }
      }
      fail(Errc::NotDivisible, "function " + f->str() + " is not invertible");
    }
    fail(Errc::NotDivisible, "cannot invert a form or field");
  }

  ExprValue div_value(const ExprValue& a, const ExprValue& b) {
    return mul_value(a, invert(b));
  }

  ExprValue pow_value(const ExprValue& a, int e) {
    if (e < 0) return pow_value(invert(a), -e);
    ExprValue acc{Scalar(1)};
    for (int t = 0; t < e; ++t) acc = mul_value(acc, a);
    return acc;
  }
};

}  // namespace

ExprValue parse_expression(const std::string& text, const ChartPtr& chart) {
  return Parser(text, chart).parse();
}

Scalar parse_scalar(const std::string& text) {
  return parse_expression(text, nullptr).as_scalar();
}

CoefFn parse_function(const std::string& text, const ChartPtr& chart) {
  return parse_expression(text, chart).as_function(chart);
}

Form parse_form(const std::string& text, const ChartPtr& chart) {
  return parse_expression(text, chart).as_form(chart);
}

MultiVector parse_field(const std::string& text, const ChartPtr& chart) {
  return parse_expression(text, chart).as_field(chart);
}

}  // namespace plectic
