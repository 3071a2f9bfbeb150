#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mono/holonomy.hpp"
#include "mono/spec_io.hpp"

namespace {

using nlohmann::json;
using namespace mono;

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

json mjson(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(cjson(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

void emit(const std::string& out, const std::string& text) {
  if (out == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw SchemaError("--out", "cannot open output file '" + out + "'");
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> grid;
  if (s.find(',') != std::string::npos) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
    return grid;
  }
  std::vector<std::string> tok;
  std::stringstream ss(s);
  std::string t;
  while (std::getline(ss, t, ':')) tok.push_back(t);
  if (tok.size() == 1) return {std::stod(tok[0])};

  const double start = std::stod(tok[0]);
  const double end = std::stod(tok[1]);
  int count = 8;
  bool geometric = false;
  for (std::size_t i = 2; i < tok.size(); ++i) {
    if (tok[i] == "geometric")
      geometric = true;
    else if (tok[i] == "linear")
      geometric = false;
    else
      count = std::stoi(tok[i]);
  }
  if (count < 2 || !(start < end))
    throw std::invalid_argument("grid must be start:end[:count][:spacing] with start < end");
  if (geometric && !(start > 0))
    throw std::invalid_argument("geometric grids need a positive start");
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    grid.push_back(geometric ? start * std::pow(end / start, f)
                             : start + f * (end - start));
  }
  return grid;
}

struct CommonOpts {
  std::string spec_path;
  std::string out = "-";
  double tol = 1e-10;
  int order = 8;
  unsigned long seed = 0;  // reserved for randomized subroutines
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("spec", opts.spec_path, "system description (JSON)")
      ->required();
  cmd->add_option("--out", opts.out, "output path, '-' for stdout");
  cmd->add_option("--tol", opts.tol, "numeric tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--order", opts.order, "truncation order N")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", opts.seed, "seed for randomized subroutines");
}

/// Runs a command body, writing its result (or a machine-readable error
/// object) to --out. Exit codes: 0 success, 1 computation error, 2 input
/// error.
int run_guarded(const CommonOpts& opts, const std::function<std::string()>& body) {
  try {
    emit(opts.out, body());
    return 0;
  } catch (const ParseError& err) {
    json e = {{"error", {{"kind", err.kind()}, {"message", err.what()},
                         {"line", err.line}, {"column", err.column}}}};
    emit(opts.out, e.dump(2));
    return 2;
  } catch (const SchemaError& err) {
    json e = {{"error", {{"kind", err.kind()}, {"message", err.what()},
                         {"field", err.field}}}};
    emit(opts.out, e.dump(2));
    return 2;
  } catch (const Error& err) {
    json e = {{"error", {{"kind", err.kind()}, {"message", err.what()}}}};
    emit(opts.out, e.dump(2));
    return 1;
  } catch (const std::invalid_argument& err) {
    json e = {{"error", {{"kind", "InvalidArgument"}, {"message", err.what()}}}};
    emit(opts.out, e.dump(2));
    return 2;
  } catch (const std::exception& err) {
    json e = {{"error", {{"kind", "Internal"}, {"message", err.what()}}}};
    emit(opts.out, e.dump(2));
    return 1;
  }
}

json matrix_result(const Matrix& m) {
  return json{{"matrix", mjson(m)},
              {"trace", cjson(m.trace())},
              {"determinant", cjson(m.determinant())}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical monodromy of holomorphic differential systems"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string loop_name, word_name, grid_spec = "1:50:8:geometric";
  int word_length = 6;
  long cap = 4096;
  double tol_rank = 1e-9;
  double dedup_tol = 1e-6;

  auto* cmd_mon = app.add_subcommand(
      "monodromy", "monodromy matrix of a loop or a word");
  add_common(cmd_mon, opts);
  cmd_mon->add_option("--loop", loop_name, "loop name");
  cmd_mon->add_option("--word", word_name, "word name (product of generators)");

  auto* cmd_traces = app.add_subcommand(
      "traces", "trace coordinates of the 3-generator representation");
  add_common(cmd_traces, opts);

  auto* cmd_reality = app.add_subcommand(
      "reality", "largest imaginary trace over reduced words");
  add_common(cmd_reality, opts);
  cmd_reality->add_option("--length", word_length, "maximum word length")
      ->check(CLI::PositiveNumber);

  auto* cmd_wkb = app.add_subcommand("wkb-scan",
                                     "normalized trace along the Higgs family");
  add_common(cmd_wkb, opts);
  cmd_wkb->add_option("--loop", loop_name, "loop name")->required();
  cmd_wkb->add_option("--t", grid_spec,
                      "t grid: start:end[:count][:geometric|linear] or a,b,c");

  auto* cmd_cp = app.add_subcommand("chen-parshin",
                                    "iterated-integral tensor coefficients");
  add_common(cmd_cp, opts);
  cmd_cp->add_option("--loop", loop_name, "loop name")->required();

  auto* cmd_lie = app.add_subcommand("lie-closure",
                                     "holonomy Lie algebra of the system");
  add_common(cmd_lie, opts);
  cmd_lie->add_option("--tol-rank", tol_rank, "rank threshold")
      ->check(CLI::PositiveNumber);

  auto* cmd_dims = app.add_subcommand("algebra-dims",
                                      "graded dimensions of the quotient algebra");
  add_common(cmd_dims, opts);

  auto* cmd_fin = app.add_subcommand("finiteness",
                                     "group closure probe of the monodromy");
  add_common(cmd_fin, opts);
  cmd_fin->add_option("--cap", cap, "closure size cap")->check(CLI::PositiveNumber);
  cmd_fin->add_option("--dedup-tol", dedup_tol, "element identification radius")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cmd_mon->parsed()) {
    return run_guarded(opts, [&] {
      const SystemSpec spec = load_spec(opts.spec_path);
      json result;
      if (!word_name.empty()) {
        const LoopWord w = spec.word(word_name);
        const auto loops = spec.generator_loops();
        const LoopWord words[] = {w};
        const Representation rep =
            representation(spec.form, loops, words, opts.tol, false);
        result = matrix_result(rep.word_values[0]);
        result["word"] = word_name;
      } else {
        if (loop_name.empty())
          throw SchemaError("--loop", "monodromy needs --loop or --word");
        result = matrix_result(monodromy(spec.form, spec.loop(loop_name), opts.tol));
        result["loop"] = loop_name;
      }
      return result.dump(2);
    });
  }

  if (cmd_traces->parsed()) {
    return run_guarded(opts, [&] {
      const SystemSpec spec = load_spec(opts.spec_path);
      const auto loops = spec.generator_loops();
      const MonodromyRep rep = monodromy_rep(spec.form, loops, opts.tol);
      const TraceCoordinates tc = trace_coordinates(rep);
      json result = {
          {"x", cjson(tc.x)},
          {"y", cjson(tc.y)},
          {"z", cjson(tc.z)},
          {"generator_traces", json::array({cjson(tc.generator_traces[0]),
                                            cjson(tc.generator_traces[1]),
                                            cjson(tc.generator_traces[2])})},
          {"triple_trace", cjson(tc.triple_trace)},
          {"generators", spec.generator_order},
          {"convention",
           "(x,y,z) = (tr M1M2, tr M2M3, tr M1M3) in generator order"}};
      return result.dump(2);
    });
  }

  if (cmd_reality->parsed()) {
    return run_guarded(opts, [&] {
      const SystemSpec spec = load_spec(opts.spec_path);
      const MonodromyRep rep =
          monodromy_rep(spec.form, spec.generator_loops(), opts.tol);
      const RealityReport report = reality_check(rep, word_length, opts.tol);
      json result = {{"real", report.real},
                     {"max_imag", report.max_imag},
                     {"words_checked", report.words_checked},
                     {"max_length", word_length}};
      return result.dump(2);
    });
  }

  if (cmd_wkb->parsed()) {
    return run_guarded(opts, [&] {
      const SystemSpec spec = load_spec(opts.spec_path);
      if (!spec.higgs)
        throw SchemaError("higgs", "wkb-scan needs a higgs block in the spec");
      const HiggsFamily family(spec.form, *spec.higgs);
      const auto grid = parse_grid(grid_spec);
      const WkbScanResult scan =
          wkb_scan(family, spec.loop(loop_name), grid, opts.tol);
      if (!scan.admissible)
        std::cerr << "warning: loop fails the admissibility inequality; "
                     "the normalized trace need not stabilize\n";
      std::string csv = "t,re_tr,im_tr,re_norm,im_norm,rel_change\n";
      for (const WkbRow& row : scan.rows) {
        csv += format_g17(row.t) + "," + format_g17(row.trace.real()) + "," +
               format_g17(row.trace.imag()) + "," +
               format_g17(row.normalized.real()) + "," +
               format_g17(row.normalized.imag()) + "," +
               format_g17(row.rel_change) + "\n";
      }
      return csv;
    });
  }

  if (cmd_cp->parsed()) {
    return run_guarded(opts, [&] {
      const SystemSpec spec = load_spec(opts.spec_path);
      if (spec.theta.empty())
        throw SchemaError("theta", "chen-parshin needs a theta form basis");
      const TensorSeries series =
          chen_parshin(spec.theta, spec.loop(loop_name), opts.order, opts.tol);
      json coeffs = json::object();
      for (const auto& [idx, c] : series.coefficients()) {
        std::string key;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          if (i) key += ",";
          key += std::to_string(idx[i] + 1);  // 1-based in the file format
        }
        coeffs[key] = cjson(c);
      }
      json result = {{"generators", static_cast<int>(spec.theta.size())},
                     {"order", opts.order},
                     {"loop", loop_name},
                     {"coefficients", coeffs}};
      return result.dump(2);
    });
  }

  if (cmd_lie->parsed()) {
    return run_guarded(opts, [&] {
      const SystemSpec spec = load_spec(opts.spec_path);
      const LieBasis basis = lie_closure(lie_generators(spec.form), tol_rank);
      json basis_json = json::array();
      for (const Matrix& b : basis.elements) basis_json.push_back(mjson(b));
      json result = {{"dimension", basis.dimension()},
                     {"ambient_rank", static_cast<long>(basis.ambient_rank)},
                     {"basis", basis_json},
                     {"closure_residual", bracket_closure_residual(basis)},
                     {"form_in_span", reduction_check(spec.form, basis, 1e-8)}};
      return result.dump(2);
    });
  }

  if (cmd_dims->parsed()) {
    return run_guarded(opts, [&] {
      const SystemSpec spec = load_spec(opts.spec_path);
      if (!spec.relations)
        throw SchemaError("algebra", "algebra-dims needs an algebra block");
      json dims = json::array();
      for (int n = 0; n <= opts.order; ++n)
        dims.push_back(graded_dimension(*spec.relations, n));
      json result = {{"generators", spec.relations->generator_count()},
                     {"relations", static_cast<int>(spec.relations->relations().size())},
                     {"dims", dims}};
      return result.dump(2);
    });
  }

  if (cmd_fin->parsed()) {
    return run_guarded(opts, [&] {
      const SystemSpec spec = load_spec(opts.spec_path);
      const MonodromyRep rep =
          monodromy_rep(spec.form, spec.generator_loops(), opts.tol);
      const FinitenessReport report = finiteness_probe(rep, cap, dedup_tol);
      json result = {{"status", report.finite ? "finite" : "unknown"},
                     {"diverged", report.diverged}};
      if (report.finite) result["order"] = report.order;
      return result.dump(2);
    });
  }

  return 2;
}
