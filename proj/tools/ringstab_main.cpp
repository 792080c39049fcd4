// ringstab: exact verification suites for matrix groups over small finite
// rings.  Reads a ring spec file, runs the requested suite, and emits a
// deterministic report (JSON by default).
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ringstab/report.hpp"
#include "ringstab/specfile.hpp"
#include "ringstab/suites.hpp"

namespace {

constexpr int kUsageError = 3;

std::vector<ringstab::elem> parse_ideal_arg(const std::string& text) {
  std::vector<ringstab::elem> out;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    std::istringstream part(tok);
    std::string piece;
    while (part >> piece) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(piece, &pos, 10);
      } catch (const std::exception&) {
        throw ringstab::RingstabError("--ideal: '" + piece +
                                      "' is not a decimal element code");
      }
      if (pos != piece.size() || v > 0xffffu)
        throw ringstab::RingstabError("--ideal: '" + piece +
                                      "' is not a decimal element code");
      out.push_back(static_cast<ringstab::elem>(v));
    }
  }
  if (out.empty())
    throw ringstab::RingstabError("--ideal: no element codes given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ringstab: exact matrix-group verification over small finite rings"};
  app.set_version_flag("--version", ringstab::tool_version());

  std::string suite;
  std::string spec_path;
  unsigned n_override = 0;
  std::string ideal_arg;
  std::size_t cap_arg = 0;
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = ringstab::SuiteOptions{}.seed;

  std::string suite_help = "suite to run: all";
  for (const std::string& s : ringstab::suite_names()) suite_help += " " + s;
  app.add_option("suite", suite, suite_help)->required();
  app.add_option("--spec", spec_path, "ring spec file (INI-style)")
      ->required();
  app.add_option("--n", n_override,
                 "matrix dimension override (2 only for identities)");
  app.add_option("--ideal", ideal_arg,
                 "comma-separated element codes generating the ideal; "
                 "restricts the per-ideal checks");
  app.add_option("--cap", cap_arg,
                 "enumeration/closure cap override (elements)");
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "write the report to this path");
  app.add_option("--seed", seed, "base seed for sampled checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return kUsageError;
  }

  try {
    ringstab::SpecFile spec = ringstab::parse_ring_spec(spec_path);

    ringstab::SuiteOptions opt;
    opt.n_override = n_override;
    opt.seed = seed;
    if (!ideal_arg.empty()) opt.ideal_gens = parse_ideal_arg(ideal_arg);
    if (cap_arg != 0) {
      opt.cap_override = cap_arg;
    } else if (const char* env = std::getenv("RINGSTAB_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0' || v == 0) {
        std::cerr << "ringstab: RINGSTAB_CAP must be a positive integer\n";
        return kUsageError;
      }
      opt.cap_override = static_cast<std::size_t>(v);
    }

    ringstab::Timings timings;
    ringstab::Report rep = ringstab::run_suite(spec, suite, opt, &timings);

    std::string payload = format == "json"
                              ? ringstab::report_to_json(rep)
                              : ringstab::report_to_text(rep, &timings);
    if (out_path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "ringstab: cannot write " << out_path << "\n";
        return kUsageError;
      }
      out << payload;
    }
    return ringstab::report_exit_code(rep);
  } catch (const ringstab::SpecParseError& e) {
    std::cerr << "ringstab: " << e.what() << "\n";
    return kUsageError;
  } catch (const ringstab::RingstabError& e) {
    std::cerr << "ringstab: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "ringstab: internal error: " << e.what() << "\n";
    return kUsageError;
  }
}
