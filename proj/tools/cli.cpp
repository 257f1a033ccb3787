#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cubicalforms/cubical.hpp"
#include "cubicalforms/errors.hpp"
#include "cubicalforms/involution.hpp"
#include "cubicalforms/qchar.hpp"
#include "cubicalforms/ssq.hpp"
#include "cubicalforms/textio.hpp"
#include "cubicalforms/verify.hpp"
#include "cubicalforms/weierstrass.hpp"

using namespace cubicalforms;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "p,v1,v2,..." -> Reduction{p, {v1, v2, ...}}
Reduction parse_mod(const std::string& text) {
  Reduction red;
  std::stringstream ss(text);
  std::string tok;
  bool first = true;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw UsageError("--mod: empty component in '" + text + "'");
    if (first) {
      try {
        std::size_t used = 0;
        long p = std::stol(tok, &used);
        if (used != tok.size() || p < 2) throw std::invalid_argument(tok);
        red.prime = static_cast<unsigned long>(p);
      } catch (const std::exception&) {
        throw UsageError("--mod: first component must be a prime >= 2, got '" + tok + "'");
      }
      first = false;
    } else {
      red.killed.push_back(tok);
    }
  }
  if (first) throw UsageError("--mod: empty ideal spec");
  return red;
}

void emit(const std::string& out_path, const std::string& payload) {
  std::string body = payload;
  if (!body.empty() && body.back() != '\n') body += '\n';
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + out_path);
  f << body;
}

std::string render_series(const TSeries& s, const std::string& format) {
  if (format == "json") return series_to_json(s);
  return s.to_string();
}

std::string first_term(const TSeries& diff) {
  for (const auto& [d, p] : diff.slices())
    if (!p.terms().empty())
      return Poly::from_sorted_terms(diff.ring(), {p.terms().front()}).to_string();
  return "0";
}

// The displayed coefficient families; checked whenever the run computes them.
void check_ru_pins(const TSeries& r, bool gamma13, const std::optional<Reduction>& red,
                   int order) {
  RingPtr ring = r.ring();
  if (!gamma13 && !red) {
    Poly a1 = Poly::variable(ring, "a1"), a2 = Poly::variable(ring, "a2"),
         a3 = Poly::variable(ring, "a3"), a4 = Poly::variable(ring, "a4");
    if (order >= 4) {
      Poly want = -(a1 * a2 - a3.scaled(3));
      Poly got = r.coefficient({1, 1, 1});
      if (got != want)
        throw PinnedValueMismatch("coefficient of x0*x1*x2: first offending term " +
                                  (got - want).to_string());
    }
    if (order >= 5) {
      Poly want = -(a1 * a3 - a2 * a2 + a4.scaled(5));
      for (const std::vector<unsigned>& e : {std::vector<unsigned>{2, 1, 1},
                                             std::vector<unsigned>{1, 2, 1},
                                             std::vector<unsigned>{1, 1, 2}}) {
        Poly got = r.coefficient(e);
        if (got != want)
          throw PinnedValueMismatch("quartic coefficient: first offending term " +
                                    (got - want).to_string());
      }
    }
  }
  if (gamma13 && red && red->prime == 2 && red->killed == std::vector<std::string>{"a1", "a2"} &&
      order >= 4) {
    Poly a3 = Poly::variable(ring, "a3");
    Poly mono = a3 * Poly::variable(ring, "x0") * Poly::variable(ring, "x1") *
                Poly::variable(ring, "x2");
    TSeries expected =
        TSeries::from_poly(Poly::constant(ring, Scalar(1)) + mono, {"x0", "x1", "x2"}, 4);
    if (r.truncated(4) != expected)
      throw PinnedValueMismatch("reduced series: first offending term " +
                                first_term(r.truncated(4) - expected));
  }
}

std::string qx_to_json(const QXSeries& s) {
  nlohmann::ordered_json j;
  j["x_order"] = s.x_order();
  j["q_order"] = s.q_order();
  j["field"] = s.field() == ScalarKind::Eisenstein ? "Q(zeta3)" : "Q";
  j["terms"] = nlohmann::ordered_json::array();
  for (int n = 0; n < s.x_order(); ++n)
    for (int q = 0; q < s.q_order(); ++q) {
      if (s.at(n, q).is_zero()) continue;
      nlohmann::ordered_json t;
      t["x"] = n;
      t["q"] = q;
      t["coefficient"] = s.at(n, q).to_string();
      j["terms"].push_back(t);
    }
  return j.dump(2);
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("CUBICALFORMS_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) {
      std::cerr << "usage error: CUBICALFORMS_THREADS must be a positive integer\n";
      return kExitUsage;
    }
    // Every module currently runs single-threaded; the cap is accepted for
    // forward compatibility and cannot change any output.
  }

  CLI::App app{"exact symbolic computations for cubical structures on elliptic curves"};
  app.require_subcommand(1);

  std::string out_path, format = "text", mod_text, form = "product", suite = "paper";
  bool use_gamma13 = false;
  int order = 0, x_order = 0, q_order = 0, rank = 1, roots = 1;
  long kmax = 48, filtration_max = 16, u2_max = 8;

  auto add_common = [&](CLI::App* sub, bool with_mod = true) {
    sub->add_option("--out", out_path, "write the output to a file instead of stdout");
    if (with_mod)
      sub->add_option("--mod", mod_text,
                      "reduce mod an ideal 'p,v1,v2,...' (prime, then killed variables)");
  };

  CLI::App* weier = app.add_subcommand("weierstrass", "formal group data of the curve");
  weier->require_subcommand(1);
  CLI::App* w_fgl = weier->add_subcommand("fgl", "two-variable formal group law");
  w_fgl->add_option("--order", order, "truncation order (terms below this total degree)")
      ->check(CLI::Range(2, 1 << 20));
  w_fgl->add_flag("--gamma13", use_gamma13, "use the a2=a4=a6=0 preset");
  w_fgl->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  add_common(w_fgl);
  CLI::App* w_z = weier->add_subcommand("zseries", "z as a series in x on the curve");
  w_z->add_option("--order", order, "truncation order")->check(CLI::Range(3, 1 << 20));
  w_z->add_flag("--gamma13", use_gamma13, "use the a2=a4=a6=0 preset");
  w_z->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  add_common(w_z);

  CLI::App* cub = app.add_subcommand("cubical", "the cubical-structure series r_U = t/u");
  cub->require_subcommand(1);
  CLI::App* c_ru = cub->add_subcommand("rU", "expand r_U and check its pinned coefficients");
  c_ru->add_option("--order", order, "truncation order")->check(CLI::Range(4, 1 << 20));
  c_ru->add_flag("--gamma13", use_gamma13, "use the a2=a4=a6=0 preset");
  c_ru->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  add_common(c_ru);
  CLI::App* c_can = cub->add_subcommand(
      "cancellation", "mod-(2,a1,a2) lowest-form cancellation of the two sides");
  c_can->add_option("--order", order, "truncation order")->check(CLI::Range(4, 1 << 20));
  c_can->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  add_common(c_can, false);

  CLI::App* inv = app.add_subcommand("involution", "the curve involution and its classes");
  inv->require_subcommand(1);
  CLI::App* i_g = inv->add_subcommand("g", "the involution series g(x) on the preset curve");
  i_g->add_option("--order", order, "truncation order")->check(CLI::PositiveNumber);
  i_g->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  add_common(i_g, false);
  CLI::App* i_check = inv->add_subcommand("check", "composition and product identities");
  i_check->add_option("--order", order, "truncation order")->check(CLI::PositiveNumber);
  add_common(i_check, false);
  CLI::App* i_pont = inv->add_subcommand("pontryagin", "the restricted product of (1 - t*c_k)");
  i_pont->add_option("--rank", rank, "number of multiplicative generators")
      ->check(CLI::PositiveNumber);
  i_pont->add_option("--order", order, "truncation order")->check(CLI::PositiveNumber);
  i_pont->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  add_common(i_pont, false);

  CLI::App* qc = app.add_subcommand("qchar", "theta expansions, genus and characters");
  qc->require_subcommand(1);
  CLI::App* q_phi = qc->add_subcommand("phi", "the theta expansion");
  q_phi->add_option("--x-order", x_order, "highest retained x power")
      ->check(CLI::PositiveNumber);
  q_phi->add_option("--q-order", q_order, "highest retained q power")
      ->check(CLI::PositiveNumber);
  q_phi->add_option("--form", form)->check(CLI::IsMember({"product", "exp"}));
  q_phi->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  add_common(q_phi, false);
  CLI::App* q_gen = qc->add_subcommand("genus", "the shifted-theta coordinate x(z)");
  q_gen->add_option("--x-order", x_order, "highest retained z power")
      ->check(CLI::PositiveNumber);
  q_gen->add_option("--q-order", q_order, "highest retained q power")
      ->check(CLI::PositiveNumber);
  q_gen->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  add_common(q_gen, false);
  CLI::App* q_chr = qc->add_subcommand("character", "product of 1/psi over formal roots");
  q_chr->add_option("--roots", roots, "number of formal roots")
      ->required()
      ->check(CLI::NonNegativeNumber);
  q_chr->add_option("--x-order", x_order, "highest retained power in each root")
      ->check(CLI::PositiveNumber);
  q_chr->add_option("--q-order", q_order, "highest retained q power")
      ->check(CLI::PositiveNumber);
  q_chr->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  add_common(q_chr, false);

  CLI::App* ssq = app.add_subcommand("ssq", "the fixed-point spectral-sequence window");
  ssq->require_subcommand(1);
  CLI::App* s_chart = ssq->add_subcommand("chart", "surviving classes of the window");
  s_chart->add_option("--kmax", kmax, "bound on |integral degree| and |sigma exponent|")
      ->check(CLI::PositiveNumber);
  s_chart->add_option("--filtration-max", filtration_max, "bound on the filtration")
      ->check(CLI::PositiveNumber);
  s_chart->add_option("--u2-max", u2_max, "bound on the u2 exponent")
      ->check(CLI::NonNegativeNumber);
  s_chart->add_option("--format", format)->check(CLI::IsMember({"text", "json", "ascii-chart"}));
  add_common(s_chart, false);

  CLI::App* ver = app.add_subcommand("verify", "recompute every pinned expansion");
  ver->add_option("--suite", suite)->check(CLI::IsMember({"paper"}));
  add_common(ver, false);

  // Per-subcommand defaults for the shared numeric options.
  w_fgl->parse_complete_callback([&] { if (order == 0) order = 4; });
  w_z->parse_complete_callback([&] { if (order == 0) order = 7; });
  c_ru->parse_complete_callback([&] { if (order == 0) order = 5; });
  c_can->parse_complete_callback([&] { if (order == 0) order = 4; });
  i_g->parse_complete_callback([&] { if (order == 0) order = 6; });
  i_check->parse_complete_callback([&] { if (order == 0) order = 10; });
  i_pont->parse_complete_callback([&] { if (order == 0) order = 5; });
  q_phi->parse_complete_callback([&] {
    if (x_order == 0) x_order = 9;
    if (q_order == 0) q_order = 5;
  });
  q_gen->parse_complete_callback([&] {
    if (x_order == 0) x_order = 5;
    if (q_order == 0) q_order = 3;
  });
  q_chr->parse_complete_callback([&] {
    if (x_order == 0) x_order = 4;
    if (q_order == 0) q_order = 3;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    std::optional<Reduction> red;
    if (!mod_text.empty()) red = parse_mod(mod_text);

    if (w_fgl->parsed() || w_z->parsed()) {
      WeierstrassCurve c =
          use_gamma13 ? WeierstrassCurve::gamma13() : WeierstrassCurve::symbolic();
      TSeries s = w_fgl->parsed() ? fgl(c, order) : z_series(c, order);
      if (red) s = s.reduced(*red);
      emit(out_path, render_series(s, format));
      return 0;
    }
    if (c_ru->parsed()) {
      WeierstrassCurve c =
          use_gamma13 ? WeierstrassCurve::gamma13() : WeierstrassCurve::symbolic();
      TSeries r = cubical_structure(c, order, red ? &*red : nullptr);
      check_ru_pins(r, use_gamma13, red, order);
      emit(out_path, render_series(r, format));
      return 0;
    }
    if (c_can->parsed()) {
      CancellationReport rep = cancellation_check(order);
      if (format == "json") {
        nlohmann::ordered_json j;
        j["lowest_form"] = rep.lowest_form.to_string();
        j["lowest_factored"] = rep.lowest_factored.to_string();
        j["second_difference"] = rep.second_difference.to_string();
        j["quotient"] = rep.quotient.to_string();
        j["series"] = rep.cubical_mod2.to_string();
        emit(out_path, j.dump(2));
      } else {
        std::ostringstream os;
        os << "lowest form        w = " << rep.lowest_form.to_string() << "\n"
           << "factored           w = " << rep.lowest_factored.to_string() << "\n"
           << "second difference  v = " << rep.second_difference.to_string() << "\n"
           << "quotient         v/w = " << rep.quotient.to_string() << "\n"
           << "series               = " << rep.cubical_mod2.to_string() << "\n";
        emit(out_path, os.str());
      }
      return 0;
    }
    if (i_g->parsed()) {
      emit(out_path, render_series(gamma13_g(order), format));
      return 0;
    }
    if (i_check->parsed()) {
      std::ostringstream os;
      TwistedComposeReport rep = twisted_compose_check(order);
      TSeries xv = TSeries::variable(rep.twisted.ring(), {"x"}, order, "x");
      if (rep.twisted != xv)
        throw PinnedValueMismatch("twisted double composite: first offending term " +
                                  first_term(rep.twisted - xv));
      os << "PASS  g_{-a}(g_a(x)) = x  (order " << order << ")\n";
      Reduction mod2{2, {}};
      if (rep.plain_mod2 != xv.reduced(mod2))
        throw PinnedValueMismatch("plain double composite mod 2: first offending term " +
                                  first_term(rep.plain_mod2 - xv.reduced(mod2)));
      os << "PASS  g(g(x)) = x mod 2\n";
      TSeries q = q_series(order), qt = q_tau_series(order), g = gamma13_g(order);
      TSeries prod = q * qt.substitute({{"x", g}});
      TSeries one = TSeries::constant(q.ring(), {"x"}, order, Scalar(1));
      if (prod != one)
        throw PinnedValueMismatch("Q(x)*Q^tau(g(x)): first offending term " +
                                  first_term(prod - one));
      os << "PASS  Q(x)*Q^tau(g(x)) = 1\n";
      int ord8 = std::min(order, 8);
      WeierstrassCurve c13 = WeierstrassCurve::gamma13();
      TSeries gm = gamma13_g(ord8).reduced(mod2), nm = n_series(c13, -1, ord8).reduced(mod2);
      if (gm != nm)
        throw PinnedValueMismatch("g vs [-1] mod 2: first offending term " + first_term(gm - nm));
      os << "PASS  g = [-1] mod 2  (order " << ord8 << ")\n";
      emit(out_path, os.str());
      return 0;
    }
    if (i_pont->parsed()) {
      emit(out_path, render_series(pontryagin_series(rank, order, rank), format));
      return 0;
    }
    if (q_phi->parsed()) {
      QXSeries s = form == "exp" ? phi_exp(x_order + 1, q_order + 1)
                                 : phi_product(x_order + 1, q_order + 1);
      emit(out_path, format == "json" ? qx_to_json(s) : s.to_tseries("x").to_string());
      return 0;
    }
    if (q_gen->parsed()) {
      QXSeries s = level3_genus_x(x_order + 1, q_order + 1);
      emit(out_path, format == "json" ? qx_to_json(s) : s.to_tseries("z").to_string());
      return 0;
    }
    if (q_chr->parsed()) {
      TSeries s = character_product(roots, x_order + 1, q_order + 1);
      emit(out_path, render_series(s, format));
      return 0;
    }
    if (s_chart->parsed()) {
      Window w{kmax, filtration_max, u2_max};
      PagePresentation page = e_infinity_chart(w);
      std::string payload = format == "json"    ? chart_json(page)
                            : format == "text"  ? chart_text(page)
                                                : chart_ascii(page);
      emit(out_path, payload);
      return 0;
    }
    if (ver->parsed()) {
      std::vector<CheckResult> results = run_paper_suite();
      emit(out_path, format_report(results));
      return all_passed(results) && total_seconds(results) < 900 ? 0 : kExitMismatch;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MathError& e) {
    std::cerr << "mismatch: " << e.what() << "\n";
    return kExitMismatch;
  }
  std::cerr << "usage error: no subcommand\n";
  return kExitUsage;
}
