#include "arggrad/model_spec.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "arggrad/special_fns.hpp"

namespace arggrad {

namespace {

std::vector<std::string> split_ws(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_real(const std::string& token, std::size_t line = 0) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || !std::isfinite(v))
    throw ParseError(line, "bad numeric token '" + token + "'");
  return v;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(Complex z) { return fmt(z.real()) + "," + fmt(z.imag()); }

}  // namespace

Complex parse_complex_token(const std::string& token) {
  if (token.empty()) throw ParseError(0, "empty numeric token");
  if (token.back() != 'i' && token.back() != 'I') return {parse_real(token), 0.0};
  const std::string body = token.substr(0, token.size() - 1);
  // Split at the last +/- that starts the imaginary part (not a leading
  // sign, not an exponent sign).
  for (std::size_t k = body.size(); k-- > 1;) {
    const char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      const double re = parse_real(body.substr(0, k));
      std::string imag_part = body.substr(k);
      if (imag_part == "+") imag_part = "1";
      if (imag_part == "-") imag_part = "-1";
      return {re, parse_real(imag_part)};
    }
  }
  if (body.empty()) return {0.0, 1.0};
  return {0.0, parse_real(body)};
}

namespace {

AnyModel parse_poly_body(const std::string& body) {
  const auto slash = body.find('/');
  std::vector<Complex> num, den;
  for (const std::string& tok : split_ws(body.substr(0, slash)))
    num.push_back(parse_complex_token(tok));
  if (slash != std::string::npos) {
    for (const std::string& tok : split_ws(body.substr(slash + 1)))
      den.push_back(parse_complex_token(tok));
  }
  if (den.empty()) den.push_back({1.0, 0.0});
  if (num.empty()) throw ParseError(0, "poly model needs numerator coefficients");
  return RationalFunction(std::move(num), std::move(den));
}

Factor parse_factor_token(const std::string& tok) {
  const auto open = tok.find('(');
  const auto close = tok.find(')', open == std::string::npos ? 0 : open);
  if (open == std::string::npos || close == std::string::npos)
    throw ParseError(0, "factor token needs kind(re,im): '" + tok + "'");
  const std::string kind = tok.substr(0, open);
  const std::string args = tok.substr(open + 1, close - open - 1);
  const auto comma = args.find(',');
  const double re = parse_real(comma == std::string::npos ? args : args.substr(0, comma));
  const double im = comma == std::string::npos ? 0.0 : parse_real(args.substr(comma + 1));
  int mult = 1;
  if (close + 1 < tok.size()) {
    if (tok[close + 1] != '^') throw ParseError(0, "expected ^multiplicity in '" + tok + "'");
    const std::string mtok = tok.substr(close + 2);
    char* end = nullptr;
    mult = static_cast<int>(std::strtol(mtok.c_str(), &end, 10));
    if (end != mtok.c_str() + mtok.size())
      throw ParseError(0, "bad multiplicity in '" + tok + "'");
  }
  const Complex z{re, im};
  if (kind == "linear") return {LinearBase{z}, mult};
  if (kind == "scaled") return {ScaledBase{z}, mult};
  if (kind == "exp") return {ExponentialBase{z}, mult};
  if (kind == "const") return {ConstantBase{z}, mult};
  throw ParseError(0, "unknown factor kind '" + kind + "'");
}

std::string keyword_arg(const std::vector<std::string>& toks, const std::string& key) {
  for (const std::string& t : toks) {
    if (t.rfind(key + "=", 0) == 0) return t.substr(key.size() + 1);
  }
  return {};
}

}  // namespace

AnyModel parse_model_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ParseError(0, "model spec needs a 'kind:' prefix");
  std::string kind = spec.substr(0, colon);
  std::erase_if(kind, [](unsigned char c) { return std::isspace(c); });
  const std::string body = spec.substr(colon + 1);

  if (kind == "poly") return parse_poly_body(body);
  if (kind == "factors") {
    std::vector<Factor> factors;
    for (const std::string& tok : split_ws(body)) factors.push_back(parse_factor_token(tok));
    if (factors.empty()) throw ParseError(0, "factors model needs at least one factor");
    return FactoredFunction(std::move(factors));
  }
  if (kind == "linear" || kind == "exp" || kind == "const") {
    const auto toks = split_ws(body);
    if (toks.empty() || toks.size() > 2)
      throw ParseError(0, kind + " shorthand takes 're [im]'");
    const Complex z{parse_real(toks[0]), toks.size() == 2 ? parse_real(toks[1]) : 0.0};
    if (kind == "linear") return FactoredFunction({{LinearBase{z}, 1}});
    if (kind == "exp") return FactoredFunction({{ExponentialBase{z}, 1}});
    return FactoredFunction({{ConstantBase{z}, 1}});
  }
  if (kind == "gamma") {
    const auto toks = split_ws(body);
    const std::string n = keyword_arg(toks, "n");
    if (n.empty()) throw ParseError(0, "gamma model needs n=<N>");
    return build_gamma(static_cast<int>(parse_real(n))).model;
  }
  if (kind == "xi") {
    const auto toks = split_ws(body);
    const std::string file = keyword_arg(toks, "file");
    const std::string n = keyword_arg(toks, "n");
    if (file.empty() || n.empty()) throw ParseError(0, "xi model needs file=<path> n=<N>");
    const std::string sigma = keyword_arg(toks, "sigma");
    std::ifstream in(file);
    if (!in) throw ParseError(0, "cannot open zeros file '" + file + "'");
    const ZetaZeroTable table = ingest_zeta_zeros(in);
    return build_xi(table, static_cast<int>(parse_real(n)),
                    sigma.empty() ? 0.5 : parse_real(sigma))
        .model;
  }
  throw ParseError(0, "unknown model kind '" + kind + "'");
}

AnyModel parse_model_file(std::istream& in) {
  std::vector<Factor> factors;
  std::vector<Complex> num, den;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "factor") {
      if (toks.size() != 5) throw ParseError(line_no, "factor line: factor <kind> <re> <im> <m>");
      const Complex z{parse_real(toks[2], line_no), parse_real(toks[3], line_no)};
      const int m = static_cast<int>(parse_real(toks[4], line_no));
      if (toks[1] == "linear")
        factors.push_back({LinearBase{z}, m});
      else if (toks[1] == "scaled")
        factors.push_back({ScaledBase{z}, m});
      else if (toks[1] == "exp")
        factors.push_back({ExponentialBase{z}, m});
      else if (toks[1] == "const")
        factors.push_back({ConstantBase{z}, m});
      else
        throw ParseError(line_no, "unknown factor kind '" + toks[1] + "'");
    } else if (toks[0] == "numerator" || toks[0] == "denominator") {
      auto& dst = toks[0] == "numerator" ? num : den;
      if (!dst.empty()) throw ParseError(line_no, "duplicate " + toks[0] + " line");
      for (std::size_t i = 1; i < toks.size(); ++i)
        dst.push_back(parse_complex_token(toks[i]));
    } else {
      throw ParseError(line_no, "unknown record '" + toks[0] + "'");
    }
  }
  const bool have_poly = !num.empty() || !den.empty();
  if (!factors.empty() && have_poly)
    throw ParseError(0, "model file mixes factor and polynomial records");
  if (!factors.empty()) return FactoredFunction(std::move(factors));
  if (num.empty()) throw ParseError(0, "model file has no usable records");
  if (den.empty()) den.push_back({1.0, 0.0});
  return RationalFunction(std::move(num), std::move(den));
}

std::string canonical_description(const AnyModel& model) {
  std::string out;
  if (const auto* fm = std::get_if<FactoredFunction>(&model)) {
    out = "factored:";
    for (const Factor& f : fm->factors()) {
      std::visit(
          [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, LinearBase>)
              out += " linear(" + fmt(b.rho) + ")";
            else if constexpr (std::is_same_v<T, ScaledBase>)
              out += " scaled(" + fmt(b.rho) + ")";
            else if constexpr (std::is_same_v<T, ExponentialBase>)
              out += " exp(" + fmt(b.c) + ")";
            else
              out += " const(" + fmt(b.a) + ")";
          },
          f.base);
      out += "^" + std::to_string(f.multiplicity);
    }
  } else {
    const auto& rf = std::get<RationalFunction>(model);
    out = "rational:";
    for (const Complex& c : rf.numerator()) out += " " + fmt(c);
    out += " /";
    for (const Complex& c : rf.denominator()) out += " " + fmt(c);
  }
  return out;
}

}  // namespace arggrad
