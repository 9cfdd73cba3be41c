#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"

using opoly::cli::Command;
using opoly::cli::Format;
using opoly::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal polynomials for the density exp(-a|z|^2 + i(z^d + conj(z)^d)/d)", "opoly"};
  app.require_subcommand(1);

  RunConfig config;
  config.precision_bits = opoly::cli::default_precision();
  std::string t;
  const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}};

  const std::vector<std::pair<Command, std::string>> commands{
      {Command::hfun, "h(a) and its derivatives with oracle deltas"},
      {Command::recurrence, "recurrence coefficients V_n and v_n"},
      {Command::opoly, "orthogonal polynomials, norms and residuals"},
      {Command::gram, "Gram matrix, determinant and pivots"},
      {Command::qms, "truncated W, M, L operators and commutator residuals"},
      {Command::verify, "run the invariant suite"},
  };
  for (const auto& [command, help] : commands) {
    CLI::App* sub = app.add_subcommand(opoly::cli::command_name(command), help);
    sub->add_option("--d", config.d, "degree of the potential")->capture_default_str();
    sub->add_option("--a", config.a, "Gaussian weight a (decimal or p/q)")->capture_default_str();
    sub->add_option("--t", t, "strength t (default 1/d)");
    sub->add_option("--N", config.N, "largest index")->capture_default_str();
    sub->add_option("--precision-bits", config.precision_bits, "working precision in bits")
        ->capture_default_str();
    sub->add_option("--format", config.format, "json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", config.output_path, "output file (default: standard output)");
    sub->callback([&config, command = command] { config.command = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : opoly::cli::exit_usage;
  }
  if (!t.empty()) config.t = t;

  opoly::cli::Report report = opoly::cli::run(config);
  std::string text = config.format == Format::json ? opoly::cli::to_json(report)
                                                   : opoly::cli::to_csv(report);
  if (config.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "opoly: cannot open " << config.output_path << "\n";
      return opoly::cli::exit_usage;
    }
    out << text;
  }
  if (report.meta.contains("error")) {
    std::cerr << "opoly: " << report.meta["error"]["message"].get<std::string>() << "\n";
  }
  return report.exit_code;
}
