#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cdiff/checks.hpp"
#include "cdiff/error.hpp"
#include "cdiff/karoubi.hpp"
#include "cdiff/linclosed.hpp"
#include "cdiff/morphfile.hpp"

using nlohmann::ordered_json;
using namespace cdiff;

namespace {

// Exit codes: 0 success, 1 check failure, 2 parse/validation error,
// 3 precondition violation.
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;
constexpr int kPrecondition = 3;

struct Options {
  std::string file;
  std::string at;
  std::string split;
  std::string format;  // "json" or "text"; empty means the command default
  std::string suite = "all";
  std::string semiring = "rat";
  std::string mutate = "none";
  double tol = -1.0;
  int samples = -1;
  std::optional<std::uint64_t> seed;
  bool raw = false;
  int count = 100;
  std::string flavor = "exact";
  int max_dim = 4;
  int max_degree = 3;
};

std::uint64_t env_or_default_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("CDIFF_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw Error("CDIFF_SEED is not a number");
    }
  }
  return fallback;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scalar parse_scalar(const std::string& token, Flavor flavor) {
  std::string t = token;
  bool neg = false;
  if (!t.empty() && t.front() == '-') {
    neg = true;
    t.erase(t.begin());
  }
  Expr c = parse_expr(t, 0, flavor);
  Scalar v = eval_expr(c, {});
  return neg ? v.negated() : v;
}

std::vector<Scalar> parse_point(const std::string& spec, Flavor flavor) {
  std::vector<Scalar> out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(parse_scalar(token, flavor));
  return out;
}

std::pair<int, int> parse_split_arg(const std::string& spec) {
  auto comma = spec.find(',');
  if (comma == std::string::npos) throw Error("--split expects n1,n2");
  try {
    return {std::stoi(spec.substr(0, comma)), std::stoi(spec.substr(comma + 1))};
  } catch (...) {
    throw Error("--split expects n1,n2");
  }
}

ordered_json scalar_to_json(const Scalar& s) {
  if (s.flavor() == Flavor::Float) return s.flt();
  if (s.is_integer() && s.rat().get_num().fits_slong_p())
    return s.rat().get_num().get_si();
  return s.str();
}

ordered_json matrix_json(const std::vector<Scalar>& vec, int rows, int cols) {
  ordered_json data = ordered_json::array();
  for (int j = 0; j < rows; ++j) {
    ordered_json row = ordered_json::array();
    for (int i = 0; i < cols; ++i)
      row.push_back(scalar_to_json(vec[static_cast<std::size_t>(j * cols + i)]));
    data.push_back(std::move(row));
  }
  ordered_json out;
  out["rows"] = rows;
  out["cols"] = cols;
  out["data"] = std::move(data);
  return out;
}

ordered_json morph_json(const Morph& m,
                        std::optional<std::pair<int, int>> split) {
  ordered_json j;
  j["dom"] = m.dom().dim;
  j["cod"] = m.cod().dim;
  j["scalar"] = flavor_name(m.flavor());
  if (split) j["split"] = {split->first, split->second};
  ordered_json exprs = ordered_json::array();
  for (const Expr& e : m.exprs()) exprs.push_back(print_expr(e));
  j["exprs"] = std::move(exprs);
  return j;
}

void print_morph_result(const Morph& m, const Options& opt,
                        std::optional<std::pair<int, int>> split = {}) {
  if (opt.format == "json") {
    std::cout << morph_json(m, split).dump() << "\n";
  } else {
    std::cout << print_morph_file(m, split);
  }
}

EqConfig eq_from(const Options& opt) {
  EqConfig eq;
  if (opt.tol >= 0.0) {
    eq.tol_abs = opt.tol;
    eq.tol_rel = opt.tol;
  }
  if (opt.samples > 0) eq.samples = opt.samples;
  return eq;
}

MorphFile load(const Options& opt) {
  return parse_morph_file(read_file(opt.file), opt.semiring == "nat");
}

// jacobian/gradient/hessian share the "morphism, or reshaped matrix at a
// point" output contract; `rows`/`cols` describe the reshape of the laid-out
// codomain vector.
int matrix_command(const Options& opt, const Morph& result, int rows, int cols) {
  if (opt.at.empty()) {
    print_morph_result(result, opt);
    return kOk;
  }
  std::vector<Scalar> point = parse_point(opt.at, result.flavor());
  std::vector<Scalar> vec = result.eval(point);
  if (opt.raw && opt.format == "json") {
    ordered_json j;
    ordered_json arr = ordered_json::array();
    for (const Scalar& s : vec) arr.push_back(scalar_to_json(s));
    j["vec"] = std::move(arr);
    std::cout << j.dump() << "\n";
    return kOk;
  }
  std::cout << matrix_json(vec, rows, cols).dump() << "\n";
  return kOk;
}

int cmd_eval(const Options& opt) {
  MorphFile mf = load(opt);
  if (opt.at.empty()) throw Error("eval requires --at");
  std::vector<Scalar> out = mf.morph.eval(parse_point(opt.at, mf.morph.flavor()));
  if (opt.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const Scalar& s : out) arr.push_back(scalar_to_json(s));
    ordered_json j;
    j["values"] = std::move(arr);
    std::cout << j.dump() << "\n";
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << out[i].str();
    }
    std::cout << "\n";
  }
  return kOk;
}

int cmd_deriv(const Options& opt) {
  print_morph_result(differentiate(load(opt).morph), opt);
  return kOk;
}

int cmd_reverse(const Options& opt) {
  print_morph_result(reverse_differentiate(load(opt).morph), opt);
  return kOk;
}

int cmd_curry(const Options& opt) {
  MorphFile mf = load(opt);
  std::optional<std::pair<int, int>> split = mf.split;
  if (!opt.split.empty()) split = parse_split_arg(opt.split);
  if (!split) throw Error("curry requires --split (or a split header)");
  print_morph_result(linear_curry(mf.morph, *split, eq_from(opt)), opt);
  return kOk;
}

int cmd_jacobian(const Options& opt) {
  MorphFile mf = load(opt);
  const int n = mf.morph.dom().dim, m = mf.morph.cod().dim;
  return matrix_command(opt, jacobian(mf.morph), m, n);
}

int cmd_gradient(const Options& opt) {
  MorphFile mf = load(opt);
  const int n = mf.morph.dom().dim, m = mf.morph.cod().dim;
  return matrix_command(opt, gradient(mf.morph), n, m);
}

int cmd_hessian(const Options& opt) {
  MorphFile mf = load(opt);
  const int n = mf.morph.dom().dim, m = mf.morph.cod().dim;
  return matrix_command(opt, hessian(mf.morph), m * n, n);
}

LinMorph matrix_from_json(const ordered_json& j) {
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw Error("matrix JSON needs rows, cols, data");
  const int rows = j["rows"].get<int>();
  const int cols = j["cols"].get<int>();
  const auto& data = j["data"];
  bool any_float = false;
  for (const auto& row : data)
    for (const auto& cell : row)
      if (cell.is_number_float()) any_float = true;
  LinMorph out(rows, cols, any_float ? Flavor::Float : Flavor::Exact);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const auto& cell = data.at(static_cast<std::size_t>(r))
                             .at(static_cast<std::size_t>(c));
      if (any_float) {
        out.set(r, c, Scalar::real(cell.get<double>()));
      } else if (cell.is_string()) {
        out.set(r, c, parse_scalar(cell.get<std::string>(), Flavor::Exact));
      } else {
        out.set(r, c, Scalar::exact(cell.get<long>()));
      }
    }
  return out;
}

int cmd_transpose(const Options& opt) {
  std::string text = read_file(opt.file);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    LinMorph m = matrix_from_json(ordered_json::parse(text)).transposed();
    std::cout << matrix_json(m.vec(), m.rows(), m.cols()).dump() << "\n";
    return kOk;
  }
  MorphFile mf = parse_morph_file(text, opt.semiring == "nat");
  LinMorph m = LinMorph::from_morph(mf.morph, eq_from(opt)).transposed();
  print_morph_result(m.to_morph(), opt);
  return kOk;
}

int cmd_check(const Options& opt) {
  CorpusConfig cfg;
  cfg.count = opt.count;
  cfg.max_dim = opt.max_dim;
  cfg.max_degree = opt.max_degree;
  cfg.seed = opt.seed ? *opt.seed : env_or_default_seed(0);
  cfg.flavor = opt.flavor == "float" ? Flavor::Float : Flavor::Exact;
  cfg.nat_semiring = opt.semiring == "nat";
  Mutation mutation = mutation_from_name(opt.mutate);
  EqConfig eq = eq_from(opt);

  std::vector<std::string> ids;
  if (opt.suite == "all") {
    ids = suite_ids();
    if (cfg.flavor == Flavor::Float)
      std::erase(ids, std::string("karoubi"));
  } else {
    ids.push_back(opt.suite);
  }

  bool all_passed = true;
  ordered_json array = ordered_json::array();
  std::string text_out;
  for (const std::string& id : ids) {
    CheckReport r = run_suite(id, cfg, mutation, eq);
    all_passed = all_passed && r.passed;
    if (opt.format == "text") {
      text_out += r.text();
    } else {
      array.push_back(r.to_json());
    }
  }
  if (opt.format == "text") {
    std::cout << text_out;
  } else if (ids.size() == 1) {
    std::cout << array.front().dump() << "\n";
  } else {
    std::cout << array.dump() << "\n";
  }
  return all_passed ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cdiff: symbolic maps R^n -> R^m with forward and reverse derivative "
      "combinators, curried Jacobians and gradients, and law-check suites"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool with_file) {
    if (with_file)
      cmd->add_option("file", opt.file, "morphism file")->required();
    cmd->add_option("--format", opt.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--tol", opt.tol, "sampled-equality tolerance");
    cmd->add_option("--samples", opt.samples, "sampled-equality sample count");
    cmd->add_option("--semiring", opt.semiring,
                    "scalar semiring for exact files: rat or nat")
        ->check(CLI::IsMember({"rat", "nat"}));
    return cmd;
  };

  CLI::App* eval = add_common(app.add_subcommand("eval", "evaluate at a point"), true);
  eval->add_option("--at", opt.at, "comma-separated coordinates")->required();

  CLI::App* deriv =
      add_common(app.add_subcommand("deriv", "total derivative"), true);
  CLI::App* reverse =
      add_common(app.add_subcommand("reverse", "reverse derivative"), true);
  (void)deriv;
  (void)reverse;

  CLI::App* curry = add_common(
      app.add_subcommand("curry", "curry a map linear in its second block"),
      true);
  curry->add_option("--split", opt.split, "domain split n1,n2");

  for (const char* name : {"jacobian", "gradient", "hessian"}) {
    CLI::App* cmd = add_common(
        app.add_subcommand(name, std::string(name) +
                                     " as a morphism, or a matrix with --at"),
        true);
    cmd->add_option("--at", opt.at, "evaluation point");
    cmd->add_flag("--raw", opt.raw, "with --format json: laid-out vector");
  }

  CLI::App* transpose = add_common(
      app.add_subcommand("transpose",
                         "transpose a linear morphism file or a matrix JSON"),
      true);
  (void)transpose;

  CLI::App* check =
      add_common(app.add_subcommand("check", "run law-check suites"), false);
  check->add_option("--suite", opt.suite, "suite id or 'all'");
  check->add_option("--seed", opt.seed, "corpus seed (or CDIFF_SEED)");
  check->add_option("--count", opt.count, "corpus size per suite");
  check->add_option("--flavor", opt.flavor, "corpus flavor: exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  check->add_option("--max-dim", opt.max_dim, "largest object dimension");
  check->add_option("--max-degree", opt.max_degree, "largest polynomial degree");
  check->add_option("--mutate", opt.mutate,
                    "corrupt one combinator (mutation sanity)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (eval->parsed()) return cmd_eval(opt);
    if (app.get_subcommand("deriv")->parsed()) return cmd_deriv(opt);
    if (app.get_subcommand("reverse")->parsed()) return cmd_reverse(opt);
    if (curry->parsed()) return cmd_curry(opt);
    if (app.get_subcommand("jacobian")->parsed()) return cmd_jacobian(opt);
    if (app.get_subcommand("gradient")->parsed()) return cmd_gradient(opt);
    if (app.get_subcommand("hessian")->parsed()) return cmd_hessian(opt);
    if (transpose->parsed()) return cmd_transpose(opt);
    if (check->parsed()) return cmd_check(opt);
    return kBadInput;
  } catch (const CurryOfNonlinearError& e) {
    std::cerr << "error: " << e.what() << "\n" << e.witness() << "\n";
    return kPrecondition;
  } catch (const HomConditionError& e) {
    std::cerr << "error: " << e.what() << "\n" << e.witness() << "\n";
    return kPrecondition;
  } catch (const NotIdempotentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const NotLinearError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
}
