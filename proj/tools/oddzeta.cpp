// oddzeta: zeta-regularized and symmetrized traces and determinants of
// eigenvalue-model operators, plus the 1-D symbol calculus behind them.
//
// Subcommands: det, zeta, trace, residue, symbol, verify.  All angles are in
// radians.  Reports embed the resolved configuration so every number is
// reproducible from its own output.

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oddzeta/fixtures.hpp"
#include "oddzeta/regdet.hpp"
#include "oddzeta/schema.hpp"
#include "oddzeta/verify.hpp"

namespace {

using namespace oddzeta;
using cplx = std::complex<double>;

int exit_code_for(errc c) {
  switch (c) {
    case errc::schema_error: return 2;
    case errc::not_agmon:
    case errc::not_principal: return 3;
    case errc::fit_unstable:
    case errc::double_pole_detected: return 4;
    case errc::depth_insufficient:
    case errc::expansion_depth_insufficient: return 5;
    default: return 6;
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string fmt(cplx v) { return fmt(v.real()) + (v.imag() < 0 ? "" : "+") + fmt(v.imag()) + "i"; }

struct OutputOptions {
  std::string format = "plain";  // plain | csv | json
};

// one report: key/value metadata plus a value table
struct Report {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void print(const OutputOptions& o) const {
    if (o.format == "json") {
      std::string s = "{";
      bool first = true;
      for (const auto& [k, v] : meta) {
        s += std::string(first ? "" : ",") + "\"" + k + "\":\"" + v + "\"";
        first = false;
      }
      s += ",\"rows\":[";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        s += i ? ",{" : "{";
        for (std::size_t j = 0; j < header.size(); ++j)
          s += (j ? ",\"" : "\"") + header[j] + "\":\"" + rows[i][j] + "\"";
        s += "}";
      }
      s += "]}";
      std::cout << s << "\n";
      return;
    }
    if (o.format == "csv") {
      for (const auto& [k, v] : meta) std::cout << "# " << k << "=" << v << "\n";
      for (std::size_t j = 0; j < header.size(); ++j)
        std::cout << header[j] << (j + 1 < header.size() ? "," : "\n");
      for (const auto& r : rows)
        for (std::size_t j = 0; j < r.size(); ++j)
          std::cout << r[j] << (j + 1 < r.size() ? "," : "\n");
      return;
    }
    for (const auto& [k, v] : meta) std::cout << k << " = " << v << "\n";
    for (const auto& r : rows) {
      for (std::size_t j = 0; j < r.size(); ++j)
        std::cout << header[j] << "=" << r[j] << (j + 1 < r.size() ? "  " : "\n");
    }
  }
};

void add_config_meta(Report& rep, const zeta::ZetaConfig& z) {
  rep.meta.emplace_back("k_expand", std::to_string(z.expansion_depth));
  rep.meta.emplace_back("n_tail", std::to_string(z.tail_cutoff));
  rep.meta.emplace_back("fit_radius", fmt(z.fit_radius));
  rep.meta.emplace_back("tol_cont", fmt(z.eps_cont));
}

void add_config_meta(Report& rep, const symb::SymbolConfig& s) {
  rep.meta.emplace_back("bandwidth", std::to_string(s.bandwidth));
  rep.meta.emplace_back("depth", std::to_string(s.depth));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zeta-regularized and symmetrized determinants of odd-class model operators"};
  app.require_subcommand(1);

  zeta::ZetaConfig zcfg;
  symb::SymbolConfig scfg;
  OutputOptions out;
  app.add_option("--k-expand", zcfg.expansion_depth, "expansion depth K");
  app.add_option("--n-tail", zcfg.tail_cutoff, "remainder cutoff N_tail");
  app.add_option("--fit-radius", zcfg.fit_radius, "Laurent fit radius");
  app.add_option("--bandwidth", scfg.bandwidth, "Fourier bandwidth N");
  app.add_option("--depth", scfg.depth, "symbol truncation depth J");
  app.add_option("--format", out.format, "output format: plain|csv|json")
      ->check(CLI::IsMember({"plain", "csv", "json"}));

  // --- det ---------------------------------------------------------------
  auto* det_cmd = app.add_subcommand("det", "log-determinant of a model operator");
  std::string det_op;
  double det_theta = 0.0;
  bool det_sym = false;
  det_cmd->add_option("--op", det_op, "operator JSON file")->required();
  det_cmd->add_option("--theta", det_theta, "cut angle (radians)")->required();
  det_cmd->add_flag("--sym", det_sym, "symmetrized determinant (two-cut average)");

  // --- zeta --------------------------------------------------------------
  auto* zeta_cmd = app.add_subcommand("zeta", "evaluate the spectral zeta function");
  std::string zeta_op;
  double zeta_theta = 0.0;
  std::vector<double> zeta_s{0.0, 0.0};
  bool zeta_direct_flag = false;
  zeta_cmd->add_option("--op", zeta_op, "operator JSON file")->required();
  zeta_cmd->add_option("--theta", zeta_theta, "cut angle (radians)")->required();
  zeta_cmd->add_option("--s", zeta_s, "evaluation point re im")->expected(2)->required();
  zeta_cmd->add_flag("--direct", zeta_direct_flag, "direct summation instead of continuation");

  // --- trace -------------------------------------------------------------
  auto* trace_cmd = app.add_subcommand("trace", "weighted / symmetrized traces");
  std::string trace_q, trace_logof;
  double trace_theta = 0.0, trace_log_theta = 0.0;
  bool trace_sym = false, trace_oddlog = false;
  trace_cmd->add_option("--q", trace_q, "weight operator Q JSON file")->required();
  trace_cmd->add_option("--theta", trace_theta, "cut angle for Q")->required();
  trace_cmd->add_option("--log-of", trace_logof, "use log of this operator as the traced family");
  trace_cmd->add_option("--log-theta", trace_log_theta, "cut angle for the log family");
  trace_cmd->add_flag("--odd-log", trace_oddlog,
                      "use log at log-theta plus log at log-theta - m pi (odd-class input)");
  trace_cmd->add_flag("--sym", trace_sym, "symmetrize over theta and theta - m pi");

  // --- residue -----------------------------------------------------------
  auto* res_cmd = app.add_subcommand("residue", "Wodzicki residue computations");
  std::string res_symbol;
  std::vector<std::string> res_cob;
  std::vector<std::string> res_anom;
  double res_theta = 0.0, res_theta_b = 0.0, res_t = -1.0;
  bool res_symmetrized = false;
  int res_quad = 0;
  res_cmd->add_option("--symbolfile", res_symbol, "symbol JSON file (plain residue)");
  res_cmd->add_option("--coboundary", res_cob, "Q.json A.json B.json")->expected(3);
  res_cmd->add_option("--anomaly", res_anom, "A.json B.json")->expected(2);
  res_cmd->add_option("--theta", res_theta, "cut angle (Q or theta_A)");
  res_cmd->add_option("--theta2", res_theta_b, "theta_B for --anomaly");
  res_cmd->add_option("--t", res_t, "deformation parameter t in [0,1] (--anomaly)");
  res_cmd->add_option("--quad-n", res_quad, "integrate the anomaly over t with n quadrature points");
  res_cmd->add_flag("--symmetrized", res_symmetrized, "average the coboundary over both cuts");

  // --- symbol -------------------------------------------------------------
  auto* sym_cmd = app.add_subcommand("symbol", "compose / power / log of symbols");
  std::string sym_what, sym_a, sym_b, sym_out;
  double sym_theta = 0.0;
  std::vector<double> sym_s{1.0, 0.0};
  sym_cmd->add_option("op", sym_what, "compose | power | log")->required();
  sym_cmd->add_option("--symbolfile", sym_a, "first symbol JSON file")->required();
  sym_cmd->add_option("--symbolfile2", sym_b, "second symbol (compose)");
  sym_cmd->add_option("--theta", sym_theta, "cut angle (power/log)");
  sym_cmd->add_option("--s", sym_s, "exponent re im (power)")->expected(2);
  sym_cmd->add_option("-o,--output", sym_out, "write the resulting symbol JSON here");

  // --- verify ------------------------------------------------------------
  auto* ver_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string ver_suite = "all";
  bool ver_double = false;
  ver_cmd->add_option("suite", ver_suite, "trace | det | sign | mult | symbols | all");
  ver_cmd->add_flag("--double", ver_double, "re-run with doubled K, N_tail, J, N");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*det_cmd) {
      const auto A = io::load_operator(det_op);
      const det::DetResult d = det_sym ? det::log_det_sym(A, det_theta, zcfg)
                                       : det::log_det(A, cut::SpectralCut(det_theta), zcfg);
      Report rep;
      rep.meta.emplace_back("command", det_sym ? "det --sym" : "det");
      rep.meta.emplace_back("operator", det_op);
      rep.meta.emplace_back("theta", fmt(det_theta));
      rep.meta.emplace_back("partner_angle", fmt(d.partner_angle));
      add_config_meta(rep, zcfg);
      rep.header = {"log_det_re", "log_det_im", "det_re", "det_im", "fit_discrepancy"};
      rep.rows.push_back({fmt(d.log_det.real()), fmt(d.log_det.imag()), fmt(d.det.real()),
                          fmt(d.det.imag()), fmt(d.fit_discrepancy)});
      rep.print(out);
      return 0;
    }

    if (*zeta_cmd) {
      const auto A = io::load_operator(zeta_op);
      zeta::ZetaFunction Z{A, cut::SpectralCut(zeta_theta), model::EigenFamily::identity(), zcfg};
      const cplx s(zeta_s[0], zeta_s[1]);
      const cplx v = zeta_direct_flag ? zeta::zeta_direct(Z, s) : zeta::continue_at(Z, s);
      Report rep;
      rep.meta.emplace_back("command", zeta_direct_flag ? "zeta --direct" : "zeta");
      rep.meta.emplace_back("operator", zeta_op);
      rep.meta.emplace_back("theta", fmt(zeta_theta));
      add_config_meta(rep, zcfg);
      rep.header = {"s_re", "s_im", "value_re", "value_im"};
      rep.rows.push_back({fmt(s.real()), fmt(s.imag()), fmt(v.real()), fmt(v.imag())});
      rep.print(out);
      return 0;
    }

    if (*trace_cmd) {
      const auto Q = io::load_operator(trace_q);
      model::EigenFamily W = model::EigenFamily::identity();
      if (!trace_logof.empty()) {
        const auto A = io::load_operator(trace_logof);
        W = model::EigenFamily::log_of(A, cut::SpectralCut(trace_log_theta));
        if (trace_oddlog) {
          W = W.plus(model::EigenFamily::log_of(
              A, cut::SpectralCut(trace_log_theta - A.order() * cut::pi)));
        }
      }
      const cplx v = trace_sym ? zeta::tr_sym(W, Q, trace_theta, zcfg)
                               : zeta::weighted_trace(W, Q, cut::SpectralCut(trace_theta), zcfg);
      Report rep;
      rep.meta.emplace_back("command", trace_sym ? "trace --sym" : "trace");
      rep.meta.emplace_back("q", trace_q);
      rep.meta.emplace_back("theta", fmt(trace_theta));
      if (!trace_logof.empty()) {
        rep.meta.emplace_back("log_of", trace_logof);
        rep.meta.emplace_back("log_theta", fmt(trace_log_theta));
        rep.meta.emplace_back("odd_log", trace_oddlog ? "true" : "false");
      }
      add_config_meta(rep, zcfg);
      rep.header = {"trace_re", "trace_im"};
      rep.rows.push_back({fmt(v.real()), fmt(v.imag())});
      rep.print(out);
      return 0;
    }

    if (*res_cmd) {
      Report rep;
      add_config_meta(rep, scfg);
      if (!res_symbol.empty()) {
        const auto S = io::load_symbol(res_symbol);
        const cplx r = symb::wodzicki_res(S);
        rep.meta.emplace_back("command", "residue");
        rep.meta.emplace_back("symbol", res_symbol);
        rep.header = {"res_re", "res_im"};
        rep.rows.push_back({fmt(r.real()), fmt(r.imag())});
      } else if (!res_cob.empty()) {
        const auto Q = io::load_symbol(res_cob[0]);
        const auto A = io::load_symbol(res_cob[1]);
        const auto B = io::load_symbol(res_cob[2]);
        rep.meta.emplace_back("command", "residue --coboundary");
        rep.meta.emplace_back("theta", fmt(res_theta));
        const cplx r1 =
            symb::residue_coboundary(Q, cut::SpectralCut(res_theta), A, B, scfg.depth, scfg);
        cplx r = r1;
        if (res_symmetrized) {
          const double partner = res_theta - Q.order.real() * cut::pi;
          const cplx r2 =
              symb::residue_coboundary(Q, cut::SpectralCut(partner), A, B, scfg.depth, scfg);
          r = 0.5 * (r1 + r2);
          rep.meta.emplace_back("symmetrized", "true");
        }
        rep.header = {"coboundary_re", "coboundary_im"};
        rep.rows.push_back({fmt(r.real()), fmt(r.imag())});
      } else if (!res_anom.empty()) {
        const auto A = io::load_symbol(res_anom[0]);
        const auto B = io::load_symbol(res_anom[1]);
        rep.meta.emplace_back("command", "residue --anomaly");
        rep.meta.emplace_back("theta_a", fmt(res_theta));
        rep.meta.emplace_back("theta_b", fmt(res_theta_b));
        const double mA = A.order.real();
        const auto at = [&](double t) {
          const double eps_dir = (res_theta > 0 && res_theta < cut::pi) ? 1.0 : -1.0;
          const double alpha = res_theta_b + t * eps_dir * res_theta;
          const double beta = alpha - (t * mA + B.order.real()) * cut::pi;
          return symb::anomaly_integrand(A, B, res_theta, alpha, beta, t, scfg.depth, scfg);
        };
        rep.header = {"t", "integrand_re", "integrand_im", "integrand_abs"};
        if (res_quad > 1) {
          // trapezoid over [0,1] plus the pointwise maximum
          double maxabs = 0.0;
          cplx integral(0, 0);
          for (int i = 0; i < res_quad; ++i) {
            const double t = static_cast<double>(i) / (res_quad - 1);
            const cplx v = at(t);
            maxabs = std::max(maxabs, std::abs(v));
            integral += v * ((i == 0 || i == res_quad - 1) ? 0.5 : 1.0);
            rep.rows.push_back({fmt(t), fmt(v.real()), fmt(v.imag()), fmt(std::abs(v))});
          }
          integral /= (res_quad - 1);
          rep.meta.emplace_back("integral_abs", fmt(std::abs(integral)));
          rep.meta.emplace_back("integrand_max", fmt(maxabs));
        } else {
          const double t = res_t >= 0 ? res_t : 0.5;
          const cplx v = at(t);
          rep.rows.push_back({fmt(t), fmt(v.real()), fmt(v.imag()), fmt(std::abs(v))});
        }
      } else {
        fail(errc::config_error, "residue needs --symbolfile, --coboundary or --anomaly");
      }
      rep.print(out);
      return 0;
    }

    if (*sym_cmd) {
      symb::Symbol result;
      const auto A = io::load_symbol(sym_a);
      if (sym_what == "compose") {
        if (sym_b.empty()) fail(errc::config_error, "compose needs --symbolfile2");
        const auto B = io::load_symbol(sym_b);
        result = symb::compose(A, B, std::min(A.depth(), B.depth()));
      } else if (sym_what == "power") {
        result = symb::power_symbol(A, cplx(sym_s[0], sym_s[1]), cut::SpectralCut(sym_theta),
                                    A.depth(), scfg);
      } else if (sym_what == "log") {
        result = symb::log_symbol(A, cut::SpectralCut(sym_theta), A.depth(), scfg);
      } else {
        fail(errc::config_error, "symbol op must be compose, power or log");
      }
      const std::string text = io::format_symbol(result);
      if (!sym_out.empty())
        io::write_file(sym_out, text);
      else
        std::cout << text;
      return 0;
    }

    if (*ver_cmd) {
      verify::VerifyOptions vo;
      vo.seed = fix::default_seed();
      vo.doubled = ver_double;
      vo.zcfg = zcfg;
      vo.scfg = scfg;
      const auto suites = verify::run_suite(ver_suite, vo);
      Report rep;
      rep.meta.emplace_back("command", "verify " + ver_suite);
      rep.meta.emplace_back("seed", std::to_string(vo.seed));
      rep.meta.emplace_back("doubled", ver_double ? "true" : "false");
      add_config_meta(rep, zcfg);
      add_config_meta(rep, scfg);
      rep.header = {"suite", "fixture", "quantity", "measured", "tolerance", "status"};
      bool all_pass = true;
      for (const auto& s : suites) {
        for (const auto& r : s.rows)
          rep.rows.push_back({s.name, r.fixture, r.quantity, fmt(r.measured), fmt(r.tolerance),
                              r.pass ? "pass" : "FAIL"});
        rep.rows.push_back({s.name, "-", "runtime_seconds", fmt(s.runtime_seconds),
                            fmt(s.runtime_limit), s.passed() ? "pass" : "FAIL"});
        all_pass = all_pass && s.passed();
      }
      rep.print(out);
      return all_pass ? 0 : 1;
    }
  } catch (const error& e) {
    const int code = exit_code_for(e.code());
    std::cerr << "error code=" << errc_name(e.code()) << " exit=" << code
              << " message=\"" << e.what() << "\"\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error code=Internal exit=9 message=\"" << e.what() << "\"\n";
    return 9;
  }
  return 0;
}
