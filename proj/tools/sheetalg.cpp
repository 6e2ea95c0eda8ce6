// Copyright 2026 The sheetalg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line entry point for scripts and the REPL, plus tools over .exc
// documents.
//
// Exit status: 0 on success, 1 on a script error (or when diff finds
// differences), 2 on a usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sheetalg/algebra.hpp"
#include "sheetalg/discovery.hpp"
#include "sheetalg/document.hpp"
#include "sheetalg/layout.hpp"
#include "sheetalg/listing.hpp"
#include "sheetalg/script.hpp"

namespace {

using namespace sheetalg;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_script(const std::string& path) {
  std::string src = read_file(path);
  Interpreter interp(std::filesystem::path(path).parent_path());
  std::cout << format_value(interp.run_source(src));
  return kOk;
}

int discover(const std::string& path) {
  Workbook wb = load_workbook(path);
  LayoutProposal proposal = propose_layout(wb.equations);
  Workbook out{decompile(wb.equations, proposal.directives), proposal.directives};
  std::cout << save_document(out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spreadsheets as sets of equations"};
  app.require_subcommand(1);

  std::string script, file, csv_out, left, right;
  bool grouped = false, relative = false;

  auto* run = app.add_subcommand("run", "Run a script and print its final value");
  run->add_option("script", script, "Script file")->required()->check(CLI::ExistingFile);

  auto* repl = app.add_subcommand("repl", "Interactive prompt");
  bool no_prompt = false;
  repl->add_flag("--no-prompt", no_prompt, "Do not print prompts");

  auto* show_cmd = app.add_subcommand("show", "List a document's equations");
  show_cmd->add_option("file", file, ".exc document")->required();
  show_cmd->add_flag("--grouped", grouped, "Merge copied formulas into region lines");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a document");
  eval_cmd->add_option("file", file, ".exc document")->required();
  eval_cmd->add_option("--csv", csv_out, "Write the values as CSV");

  auto* diff_cmd = app.add_subcommand("diff", "Compare two documents");
  diff_cmd->add_option("a", left, "Original")->required();
  diff_cmd->add_option("b", right, "Changed")->required();
  diff_cmd->add_flag("--relative", relative, "Compare relative forms");

  auto* style_cmd = app.add_subcommand("stylecheck", "Report formulas copied within a sheet");
  style_cmd->add_option("file", file, ".exc document")->required();

  auto* discover_cmd = app.add_subcommand("discover", "Propose layouts and decompile");
  discover_cmd->add_option("file", file, ".exc document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run) return run_script(script);
    if (*repl) return run_repl(std::cin, std::cout, std::cerr, !no_prompt) == 0 ? kOk : kFailed;
    if (*show_cmd) {
      std::cout << show(load_workbook(file), grouped);
      return kOk;
    }
    if (*eval_cmd) {
      ValueGrid grid = evaluate(load_workbook(file).equations);
      if (csv_out.empty())
        std::cout << format_value(ScriptValue{grid});
      else
        export_csv(grid, csv_out);
      return kOk;
    }
    if (*diff_cmd) {
      DiffReport report = diff(load_workbook(left).equations, load_workbook(right).equations,
                               relative ? DiffMode::Relative : DiffMode::Absolute);
      std::cout << to_string(report);
      return report.empty() ? kOk : kFailed;
    }
    if (*style_cmd) {
      std::cout << to_string(stylecheck_unique(load_workbook(file).equations));
      return kOk;
    }
    if (*discover_cmd) return discover(file);
  } catch (const Error& e) {
    std::cerr << "sheetalg: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
