#include "cubicalforms/textio.hpp"

#include <cctype>
#include <optional>

#include <json.hpp>

namespace cubicalforms {

namespace {

struct Token {
  enum Kind { Number, Name, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& input) {
    std::size_t i = 0;
    while (i < input.size()) {
      char c = input[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < input.size() && std::isdigit(static_cast<unsigned char>(input[j]))) ++j;
        tokens_.push_back({Token::Number, input.substr(i, j - i)});
        i = j;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < input.size() && (std::isalnum(static_cast<unsigned char>(input[j])) ||
                                    input[j] == '_'))
          ++j;
        tokens_.push_back({Token::Name, input.substr(i, j - i)});
        i = j;
        continue;
      }
      Token::Kind kind;
      switch (c) {
        case '+': kind = Token::Plus; break;
        case '-': kind = Token::Minus; break;
        case '*': kind = Token::Star; break;
        case '^': kind = Token::Caret; break;
        case '/': kind = Token::Slash; break;
        case '(': kind = Token::LParen; break;
        case ')': kind = Token::RParen; break;
        default:
          throw TextParseError(std::string("unexpected character '") + c + "'");
      }
      tokens_.push_back({kind, std::string(1, c)});
      ++i;
    }
    tokens_.push_back({Token::End, ""});
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  Token next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
  void expect(Token::Kind kind, const std::string& what) {
    if (peek().kind != kind) throw TextParseError("expected " + what);
    next();
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

mpz_class to_mpz(const std::string& digits) { return mpz_class(digits, 10); }

class Parser {
 public:
  Parser(RingPtr ring, const std::string& text) : ring_(std::move(ring)), lex_(text) {}

  // Parses the whole input; a trailing "+ O(N)" sets the order.
  Poly run(std::optional<int>* order) {
    Poly p = parse_sum(order);
    if (lex_.peek().kind != Token::End) throw TextParseError("trailing input after expression");
    return p;
  }

 private:
  bool at_marker() const {
    return lex_.peek().kind == Token::Name && lex_.peek().text == "O" &&
           lex_.peek(1).kind == Token::LParen;
  }

  int parse_marker() {
    lex_.next();  // O
    lex_.expect(Token::LParen, "'('");
    if (lex_.peek().kind == Token::Name && lex_.peek().text == "total_degree") lex_.next();
    if (lex_.peek().kind != Token::Number) throw TextParseError("expected order in O(...)");
    mpz_class n = to_mpz(lex_.next().text);
    if (n < 0 || n > 100000) throw TextParseError("order out of range");
    lex_.expect(Token::RParen, "')'");
    return static_cast<int>(n.get_si());
  }

  Poly parse_sum(std::optional<int>* order) {
    Poly acc = parse_product();
    while (true) {
      Token::Kind k = lex_.peek().kind;
      if (k == Token::Plus) {
        lex_.next();
        if (order != nullptr && at_marker()) {
          *order = parse_marker();
          if (lex_.peek().kind != Token::End)
            throw TextParseError("truncation marker must end the series");
          return acc;
        }
        acc += parse_product();
      } else if (k == Token::Minus) {
        lex_.next();
        acc -= parse_product();
      } else {
        return acc;
      }
    }
  }

  Poly parse_product() {
    Poly acc = parse_power();
    while (lex_.peek().kind == Token::Star) {
      lex_.next();
      acc *= parse_power();
    }
    return acc;
  }

  Poly parse_power() {
    if (lex_.peek().kind == Token::Minus) {
      lex_.next();
      return -parse_power();
    }
    Poly base = parse_atom();
    if (lex_.peek().kind == Token::Caret) {
      lex_.next();
      if (lex_.peek().kind != Token::Number) throw TextParseError("expected exponent after '^'");
      mpz_class e = to_mpz(lex_.next().text);
      if (e < 0 || e > 255) throw TextParseError("exponent out of range");
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Poly parse_atom() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Number) {
      mpz_class num = to_mpz(lex_.next().text);
      if (lex_.peek().kind == Token::Slash) {
        lex_.next();
        if (lex_.peek().kind != Token::Number)
          throw TextParseError("expected denominator after '/'");
        mpz_class den = to_mpz(lex_.next().text);
        if (den == 0) throw TextParseError("zero denominator");
        return Poly::constant(ring_, Scalar::rational(num, den));
      }
      return Poly::constant(ring_, Scalar(num));
    }
    if (t.kind == Token::Name) {
      std::string name = lex_.next().text;
      if (name == "zeta") return Poly::constant(ring_, Scalar::zeta());
      if (!ring_->has(name)) throw TextParseError("unknown variable: " + name);
      return Poly::variable(ring_, name);
    }
    if (t.kind == Token::LParen) {
      lex_.next();
      Poly inner = parse_sum(nullptr);
      lex_.expect(Token::RParen, "')'");
      return inner;
    }
    throw TextParseError("expected a number, variable, or '('");
  }

  RingPtr ring_;
  Lexer lex_;
};

}  // namespace

Scalar parse_scalar(const std::string& text) {
  static const RingPtr empty = PolyRing::create({});
  Poly p = parse_poly(empty, text);
  return p.constant_term();
}

Poly parse_poly(RingPtr ring, const std::string& text) {
  Parser parser(std::move(ring), text);
  Poly p = parser.run(nullptr);
  return p;
}

TSeries parse_series(RingPtr ring, const std::vector<std::string>& series_vars,
                     const std::string& text) {
  Parser parser(ring, text);
  std::optional<int> order;
  Poly p = parser.run(&order);
  if (!order) throw TextParseError("series text must end with its truncation marker + O(N)");
  return TSeries::from_poly(p, series_vars, *order);
}

namespace {

nlohmann::ordered_json terms_to_json(const RingPtr& ring,
                                     const std::vector<Poly::Term>& terms) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [key, c] : terms) {
    nlohmann::ordered_json t;
    t["exps"] = expkey::unpack(key, ring->size());
    t["coeff"] = c.to_string();
    arr.push_back(std::move(t));
  }
  return arr;
}

std::vector<Poly::Term> terms_from_json(const RingPtr& ring, const nlohmann::ordered_json& arr) {
  std::map<ExpKey, Scalar, std::greater<ExpKey>> acc;
  for (const auto& t : arr) {
    std::vector<unsigned> exps = t.at("exps").get<std::vector<unsigned>>();
    if (exps.size() != ring->size()) throw TextParseError("exponent vector length mismatch");
    Scalar c = parse_scalar(t.at("coeff").get<std::string>());
    acc[expkey::pack(exps)] += c;
  }
  std::vector<Poly::Term> terms;
  for (auto& [k, c] : acc)
    if (!c.is_zero()) terms.emplace_back(k, std::move(c));
  return terms;
}

}  // namespace

std::string poly_to_json(const Poly& p) {
  nlohmann::ordered_json j;
  j["vars"] = p.ring()->names();
  j["terms"] = terms_to_json(p.ring(), p.terms());
  return j.dump();
}

Poly poly_from_json(RingPtr ring, const std::string& json_text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw TextParseError(std::string("bad JSON: ") + e.what());
  }
  try {
    if (j.at("vars").get<std::vector<std::string>>() != ring->names())
      throw TextParseError("variable list mismatch");
    return Poly::from_sorted_terms(ring, terms_from_json(ring, j.at("terms")));
  } catch (const nlohmann::json::exception& e) {
    throw TextParseError(std::string("bad polynomial JSON: ") + e.what());
  }
}

std::string series_to_json(const TSeries& s) {
  nlohmann::ordered_json j;
  j["vars"] = s.ring()->names();
  j["series_vars"] = s.series_vars();
  j["order"] = s.order();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [d, p] : s.slices()) {
    (void)d;
    for (const auto& j2 : terms_to_json(s.ring(), p.terms())) arr.push_back(j2);
  }
  j["terms"] = std::move(arr);
  return j.dump();
}

TSeries series_from_json(RingPtr ring, const std::string& json_text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw TextParseError(std::string("bad JSON: ") + e.what());
  }
  try {
    if (j.at("vars").get<std::vector<std::string>>() != ring->names())
      throw TextParseError("variable list mismatch");
    auto series_vars = j.at("series_vars").get<std::vector<std::string>>();
    int order = j.at("order").get<int>();
    std::vector<Poly::Term> terms = terms_from_json(ring, j.at("terms"));
    std::sort(terms.begin(), terms.end(),
              [](const Poly::Term& a, const Poly::Term& b) { return a.first > b.first; });
    Poly p = Poly::from_sorted_terms(ring, std::move(terms));
    return TSeries::from_poly(p, series_vars, order);
  } catch (const nlohmann::json::exception& e) {
    throw TextParseError(std::string("bad series JSON: ") + e.what());
  }
}

}  // namespace cubicalforms
