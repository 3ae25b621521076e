#include "ptqw/cli/expression.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "ptqw/floquet.hpp"

namespace ptqw::cli {
namespace {

class Parser {
 public:
  Parser(std::string_view text, double loss) : text_(text), loss_(loss) {}

  double parse() {
    const double value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  double expression() {
    double value = term();
    while (true) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  double term() {
    double value = unary();
    while (true) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        value /= unary();
      } else {
        return value;
      }
    }
  }

  double unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  double power() {
    const double base = primary();
    if (accept('^')) return std::pow(base, unary());
    return base;
  }

  double primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (accept('(')) {
      const double value = expression();
      expect(')');
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  double number() {
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const std::string copy(text_.substr(pos_));
    const double value = std::strtod(copy.c_str(), &end);
    const std::size_t used = static_cast<std::size_t>(end - copy.c_str());
    if (used == 0) fail("malformed number near '" + std::string(begin, 1) + "'");
    pos_ += used;
    return value;
  }

  double name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string id(text_.substr(start, pos_ - start));

    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      const double arg = expression();
      expect(')');
      return call(id, arg);
    }
    if (id == "pi") return kPi;
    if (id == "p") return loss_;
    if (id == "alpha" || id == "beta" || id == "gamma") {
      const CoinParams params(0.0, 0.0, loss_);
      if (id == "alpha") return params.alpha();
      if (id == "beta") return params.beta();
      return params.gamma();
    }
    fail("unknown name '" + id + "'");
  }

  double call(const std::string& fn, double x) {
    if (fn == "sin") return std::sin(x);
    if (fn == "cos") return std::cos(x);
    if (fn == "tan") return std::tan(x);
    if (fn == "arcsin" || fn == "asin") return std::asin(x);
    if (fn == "arccos" || fn == "acos") return std::acos(x);
    if (fn == "arctan" || fn == "atan") return std::atan(x);
    if (fn == "sqrt") return std::sqrt(x);
    if (fn == "exp") return std::exp(x);
    if (fn == "log") return std::log(x);
    if (fn == "abs") return std::abs(x);
    fail("unknown function '" + fn + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("cannot parse expression \"" + std::string(text_) + "\" at offset " +
                      std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  double loss_;
  std::size_t pos_ = 0;
};

}  // namespace

double evaluate_expression(std::string_view text, double loss) {
  const double value = Parser(text, loss).parse();
  if (!std::isfinite(value)) {
    throw ConfigError("expression \"" + std::string(text) + "\" does not evaluate to a finite number");
  }
  return value;
}

}  // namespace ptqw::cli
