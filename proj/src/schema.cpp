#include "oddzeta/schema.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace oddzeta::io {

namespace {

using nlohmann::ordered_json;
using cplx = std::complex<double>;

double number_field(const ordered_json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      std::size_t pos = 0;
      const std::string s = j.get<std::string>();
      const double v = std::stod(s, &pos);
      if (pos == s.size()) return v;
    } catch (...) {
    }
  }
  fail(errc::schema_error, std::string("expected a number for ") + what);
}

cplx complex_field(const ordered_json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    fail(errc::schema_error, std::string(what) + " must be a [re, im] pair");
  return {number_field(j[0], what), number_field(j[1], what)};
}

ordered_json complex_out(cplx v) { return ordered_json::array({v.real(), v.imag()}); }

ordered_json parse_text(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::schema_error, "malformed JSON");
  return j;
}

}  // namespace

model::SpectralOperator parse_operator(const std::string& text) {
  const ordered_json j = parse_text(text);
  if (!j.is_object() || j.value("kind", "") != "spectral")
    fail(errc::schema_error, "operator file must have kind == \"spectral\"");
  model::SpectralOperator A;
  if (!j.contains("order")) fail(errc::schema_error, "missing order");
  A.law.order = static_cast<int>(number_field(j["order"], "order"));
  const std::string iset = j.value("index_set", "Z_nonzero");
  if (iset == "Z")
    A.index_set = model::IndexSet::Z;
  else if (iset == "Z_nonzero")
    A.index_set = model::IndexSet::ZNonzero;
  else
    fail(errc::schema_error, "index_set must be \"Z\" or \"Z_nonzero\"");
  if (!j.contains("law") || !j["law"].is_array() || j["law"].empty())
    fail(errc::schema_error, "missing law terms");
  for (const auto& t : j["law"]) {
    model::LawTerm term;
    term.c = complex_field(t.at("c"), "law coefficient");
    term.sgn_exp = static_cast<int>(number_field(t.at("sgn"), "sgn"));
    term.pow = static_cast<int>(number_field(t.at("pow"), "pow"));
    A.law.terms.push_back(term);
  }
  if (j.contains("exceptions")) {
    for (const auto& e : j["exceptions"]) {
      const auto n = static_cast<std::int64_t>(number_field(e.at("n"), "exception index"));
      model::EigenException exc;
      exc.value = complex_field(e.at("value"), "exception value");
      exc.mult = e.contains("mult") ? static_cast<int>(number_field(e["mult"], "mult")) : 1;
      A.exceptions[n] = exc;
    }
  }
  try {
    A.validate();
  } catch (const error& err) {
    fail(errc::schema_error, std::string("invalid operator: ") + err.what());
  }
  return A;
}

std::string format_operator(const model::SpectralOperator& A) {
  ordered_json j;
  j["kind"] = "spectral";
  j["order"] = A.law.order;
  j["index_set"] = A.index_set == model::IndexSet::Z ? "Z" : "Z_nonzero";
  j["law"] = ordered_json::array();
  for (const auto& t : A.law.terms)
    j["law"].push_back({{"c", complex_out(t.c)}, {"sgn", t.sgn_exp}, {"pow", t.pow}});
  if (!A.exceptions.empty()) {
    j["exceptions"] = ordered_json::array();
    for (const auto& [n, e] : A.exceptions)
      j["exceptions"].push_back({{"n", n}, {"value", complex_out(e.value)}, {"mult", e.mult}});
  }
  return j.dump(2) + "\n";
}

symb::Symbol parse_symbol(const std::string& text) {
  const ordered_json j = parse_text(text);
  if (!j.is_object() || j.value("kind", "") != "symbol")
    fail(errc::schema_error, "symbol file must have kind == \"symbol\"");
  symb::Symbol S;
  if (!j.contains("order")) fail(errc::schema_error, "missing order");
  S.order = cplx(number_field(j["order"], "order"), 0.0);
  if (j.contains("gamma")) S.gamma = complex_field(j["gamma"], "gamma");
  if (!j.contains("components") || !j["components"].is_array() || j["components"].empty())
    fail(errc::schema_error, "missing components");
  int expect = 0;
  for (const auto& comp : j["components"]) {
    const double deg = number_field(comp.at("deg"), "deg");
    if (std::abs(deg - (S.order.real() - expect)) > 1e-9)
      fail(errc::schema_error, "component degrees must decrease by 1 from the order");
    ++expect;
    symb::HomogComponent h;
    for (const char* side : {"plus", "minus"}) {
      const auto& fn = comp.at(side);
      if (!fn.contains("fourier") || !fn["fourier"].is_array() ||
          fn["fourier"].size() % 2 != 1)
        fail(errc::schema_error, "fourier list must have odd length ordered k = -B..B");
      const int bw = (static_cast<int>(fn["fourier"].size()) - 1) / 2;
      std::map<int, cplx> modes;
      int k = -bw;
      for (const auto& cv : fn["fourier"]) modes[k++] = complex_field(cv, "fourier coefficient");
      (side[0] == 'p' ? h.plus : h.minus) = symb::FourierFn::from_modes(modes);
    }
    S.comps.push_back(std::move(h));
  }
  return S;
}

std::string format_symbol(const symb::Symbol& S) {
  ordered_json j;
  j["kind"] = "symbol";
  j["order"] = S.order.real();
  if (S.gamma != cplx(0, 0)) j["gamma"] = complex_out(S.gamma);
  j["components"] = ordered_json::array();
  for (int i = 0; i <= S.depth(); ++i) {
    ordered_json comp;
    comp["deg"] = S.order.real() - i;
    for (const char* side : {"plus", "minus"}) {
      const symb::FourierFn& f = side[0] == 'p' ? S.comps[i].plus : S.comps[i].minus;
      ordered_json list = ordered_json::array();
      for (int k = -f.bandwidth(); k <= f.bandwidth(); ++k) list.push_back(complex_out(f.coeff(k)));
      comp[side] = {{"fourier", list}};
    }
    j["components"].push_back(std::move(comp));
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::schema_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::schema_error, "cannot write " + path);
  out << content;
}

model::SpectralOperator load_operator(const std::string& path) {
  return parse_operator(read_file(path));
}

symb::Symbol load_symbol(const std::string& path) { return parse_symbol(read_file(path)); }

}  // namespace oddzeta::io
