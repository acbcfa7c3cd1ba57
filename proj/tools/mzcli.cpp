// Command-line front end. Builds a JSON request per subcommand and hands it
// to the C API; the report goes to --output or stdout.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "mz/mz.h"

namespace {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// A file path, "-" for stdin, or inline JSON text.
json load_json(const std::string& arg, const char* flag) {
  std::string text = arg;
  if (arg == "-") {
    text = slurp(std::cin);
  } else if (std::error_code ec; std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream f(arg);
    text = slurp(f);
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(flag) + ": not a JSON file or literal (" + e.what() + ")");
  }
}

// Integers stay integers; anything else ("3/5") is passed as a string literal.
json scalar_arg(const std::string& s) {
  try {
    auto j = json::parse(s);
    if (j.is_number_integer() || j.is_array()) return j;
  } catch (const json::parse_error&) {
  }
  return s;
}

int emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text << '\n';
    return 0;
  }
  std::ofstream f(output);
  if (!f) {
    std::cerr << "error: cannot write " << output << '\n';
    return 2;
  }
  f << text << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mathieu-Zhao subspace toolkit for matrix algebras"};
  app.set_version_flag("--version", std::string(mz_version()));
  app.require_subcommand(1);

  std::string output;
  unsigned long long budget = 0;
  app.add_option("-o,--output", output, "Write the JSON report here instead of stdout");
  app.add_option("--budget", budget, "Cap on elements visited by exhaustive scans")->check(CLI::PositiveNumber);

  std::string command;
  json request = json::object();

  auto* certify = app.add_subcommand("certify", "Decide whether a subspace is an MS");
  std::string subspace_arg, method = "criterion", candidate_arg;
  certify->add_option("--subspace", subspace_arg, "Subspace literal (file, - or inline JSON)")->required();
  certify->add_option("--method", method, "criterion, definition or both")
      ->check(CLI::IsMember({"criterion", "definition", "both"}));
  certify->add_option("--candidate", candidate_arg, "Matrix literal tested as an idempotent witness");

  auto* construct = app.add_subcommand("construct", "Build a weight-space family member with its certificate");
  std::string family, params_arg;
  construct->add_option("--family", family, "ex22, ex23, ex24 or cor26")
      ->required()
      ->check(CLI::IsMember({"ex22", "ex23", "ex24", "cor26"}));
  construct->add_option("--params", params_arg, "Family parameters (file, - or inline JSON)")->required();

  auto* maximal = app.add_subcommand("maximal", "Maximality witnesses for the two-block family");
  std::string family_params_arg, direction_arg;
  maximal->add_option("--family-params", family_params_arg, "Parameters including \"family\": ex24 or cor26")
      ->required();
  auto* direction_opt = maximal->add_option("--direction", direction_arg, "Single direction (matrix literal)");
  auto* exhaustive_flag = maximal->add_flag("--exhaustive", "Witness every extension direction (default)");
  direction_opt->excludes(exhaustive_flag);

  auto* census = app.add_subcommand("census", "Exhaustive MS census of M_n(F_q)");
  unsigned n = 2;
  unsigned long long q = 2;
  bool compare = false, witnesses = false;
  census->add_option("--n", n, "Matrix size")->required();
  census->add_option("--q", q, "Field order (prime power)")->required();
  census->add_flag("--compare-classification", compare, "Compare maximal MSs with the predicted families (n = 2)");
  census->add_flag("--witnesses", witnesses, "Include an idempotent witness for every non-MS");

  auto* oracle = app.add_subcommand("oracle-compare", "Definition versus idempotent criterion");
  unsigned long long samples = 0, seed = 0;
  oracle->add_option("--n", n, "Matrix size")->required();
  oracle->add_option("--q", q, "Field order (prime power)")->required();
  auto* samples_opt = oracle->add_option("--samples", samples, "Sample this many subspaces instead of all");
  oracle->add_option("--seed", seed, "Sampling seed");

  auto* classify = app.add_subcommand("classify2", "Predicted maximal families of M_2 against the census");
  classify->add_option("--field", q, "Field order (prime power)")->required();

  auto* basechange = app.add_subcommand("demo-basechange", "Maximal MS that stops being an MS after adjoining sqrt(s)");
  unsigned long long p = 5;
  std::string s_arg;
  basechange->add_option("--p", p, "Base characteristic, 0 for Q")->required();
  basechange->add_option("--s", s_arg, "Non-square s (integer or num/den)")->required();

  auto* debondt = app.add_subcommand("debondt-sample", "Sampled codimension-2 subspaces of M_n(F_p) outside H");
  unsigned long long dp = 5;
  unsigned dn = 3;
  debondt->add_option("--samples", samples, "Number of subspaces")->required();
  debondt->add_option("--seed", seed, "Sampling seed");
  debondt->add_option("--p", dp, "Prime");
  debondt->add_option("--n", dn, "Matrix size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (certify->parsed()) {
      command = "certify";
      request["subspace"] = load_json(subspace_arg, "--subspace");
      request["method"] = method;
      if (!candidate_arg.empty()) request["candidate"] = load_json(candidate_arg, "--candidate");
    } else if (construct->parsed()) {
      command = "construct";
      request["family"] = family;
      request["params"] = load_json(params_arg, "--params");
    } else if (maximal->parsed()) {
      command = "maximal";
      request["family_params"] = load_json(family_params_arg, "--family-params");
      if (!direction_arg.empty()) request["direction"] = load_json(direction_arg, "--direction");
    } else if (census->parsed()) {
      command = "census";
      request["n"] = n;
      request["q"] = q;
      request["compare_classification"] = compare;
      request["witnesses"] = witnesses;
    } else if (oracle->parsed()) {
      command = "oracle-compare";
      request["n"] = n;
      request["q"] = q;
      if (samples_opt->count() > 0) {
        request["samples"] = samples;
        request["seed"] = seed;
      }
    } else if (classify->parsed()) {
      command = "classify2";
      request["q"] = q;
    } else if (basechange->parsed()) {
      command = "demo-basechange";
      request["p"] = p;
      request["s"] = scalar_arg(s_arg);
    } else if (debondt->parsed()) {
      command = "debondt-sample";
      request["samples"] = samples;
      request["seed"] = seed;
      request["p"] = dp;
      request["n"] = dn;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (budget > 0) request["budget"] = budget;

  char* response = nullptr;
  int exit_code = 2;
  const mz_status st = mz_run_command(command.c_str(), request.dump().c_str(), &response, &exit_code);
  if (st != MZ_OK) std::cerr << "error: " << mz_last_error() << '\n';
  int rc = response ? emit(response, output) : 2;
  mz_string_free(response);
  return rc != 0 ? rc : exit_code;
}
