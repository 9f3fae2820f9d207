// dvw: command-line front end over the C interface.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dvw/dvw.h"

namespace {

bool readInput(const std::string& arg, std::string& out) {
  std::ifstream in(arg, std::ios::binary);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
  }
  // Anything that looks like a declaration is taken literally.
  if (arg.find('=') != std::string::npos) {
    out = arg;
    return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"de Vries duality verification workbench"};
  app.set_version_flag("--version", std::string(dvw_version()));

  std::string verb;
  std::vector<std::string> inputs;
  std::vector<unsigned> bounds;
  std::string format = "json";
  std::string outPath;
  unsigned universe = 0;

  app.add_option("verb", verb,
                 "check-proximity | check-morphism | check-extension | compose | ends | dualize | "
                 "roundtrip | equivalence | maximal | example-3-3")
      ->required();
  app.add_option("inputs", inputs, "structure files or inline declarations");
  app.add_option("--bounds", bounds, "fragment bounds T,P,Tprime (default 6,4,12)")
      ->delimiter(',')
      ->expected(3);
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", outPath, "write the report to PATH");
  app.add_option("--universe", universe, "universe period for maximal (default P)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string text;
  for (const auto& arg : inputs) {
    std::string part;
    if (!readInput(arg, part)) {
      std::cerr << "dvw: cannot read '" << arg << "'\n";
      return 2;
    }
    text += part;
    text += '\n';
  }

  dvw_options opts;
  dvw_options_default(&opts);
  if (!bounds.empty()) {
    opts.threshold = bounds[0];
    opts.period = bounds[1];
    opts.witness_threshold = bounds[2];
  }
  opts.format = format == "text" ? DVW_FORMAT_TEXT : DVW_FORMAT_JSON;
  opts.universe = universe;

  dvw_report* report = nullptr;
  const dvw_status st = dvw_run(verb.c_str(), text.c_str(), &opts, &report);
  if (!report) {
    std::cerr << "dvw: " << dvw_last_error() << "\n";
    return st == DVW_OK ? 3 : static_cast<int>(st);
  }
  const int code = dvw_report_exit_code(report);
  if (outPath.empty()) {
    std::cout << dvw_report_text(report);
  } else {
    std::ofstream out(outPath, std::ios::binary);
    out << dvw_report_text(report);
    if (!out) {
      std::cerr << "dvw: cannot write '" << outPath << "'\n";
      dvw_report_free(report);
      return 2;
    }
  }
  dvw_report_free(report);
  return code;
}
