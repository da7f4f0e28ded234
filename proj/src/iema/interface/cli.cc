/*
 * Copyright 2026 The IEMA Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "iema/interface/cli.h"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "iema/common/file.h"
#include "iema/common/status_macros.h"
#include "iema/grammar/earley.h"
#include "iema/grammar/generator.h"
#include "iema/grammar/iema_grammar.h"
#include "iema/interface/html_export.h"
#include "iema/interface/http_server.h"
#include "iema/interface/script.h"
#include "iema/model/model_spec.h"
#include "iema/session/bundle.h"
#include "iema/session/payload_json.h"

namespace iema::interface {
namespace {

using nlohmann::json;

constexpr int kRejected = 1;
constexpr int kUsage = 2;

struct InputFlags {
  std::string data;
  std::string config;
  std::string target;
  std::string model;
  std::optional<uint64_t> seed;
  size_t instance_cap = 200;
};

void AddInputFlags(CLI::App* app, InputFlags& flags) {
  app->add_option("--data", flags.data, "CSV dataset")->required();
  app->add_option("--model", flags.model, "model-spec JSON")->required();
  app->add_option("--config", flags.config,
                  "load config JSON (default: the dataset path with .json)");
  app->add_option("--target", flags.target, "target column id");
  app->add_option("--seed", flags.seed,
                  "session seed (default: $IEMA_SEED, then the config seed)");
  app->add_option("--instance-cap", flags.instance_cap,
                  "rows used by global SHAP and PDP steps (0 = all)");
}

struct Inputs {
  std::shared_ptr<const data::Dataset> dataset;
  model::ModelHandle model;
  session::SessionOptions options;
};

absl::StatusOr<Inputs> LoadInputs(const InputFlags& flags) {
  data::LoadConfig config;
  std::string config_path = flags.config;
  if (config_path.empty()) {
    const auto sidecar =
        std::filesystem::path(flags.data).replace_extension(".json");
    if (std::filesystem::exists(sidecar)) config_path = sidecar.string();
  }
  if (!config_path.empty()) {
    ASSIGN_OR_RETURN(const std::string text, ReadFile(config_path));
    ASSIGN_OR_RETURN(config, data::ParseLoadConfig(text));
  }
  if (!flags.target.empty()) config.target = flags.target;
  if (config.target.empty()) {
    return absl::InvalidArgumentError(
        "no target column: pass --target or a config with \"target\"");
  }
  ASSIGN_OR_RETURN(data::Dataset dataset,
                   data::LoadDatasetFile(flags.data, config));
  Inputs inputs;
  inputs.dataset = std::make_shared<data::Dataset>(std::move(dataset));
  ASSIGN_OR_RETURN(
      inputs.model,
      model::LoadModelFile(flags.model, inputs.dataset->feature_schema()));
  uint64_t seed = config.seed.value_or(0);
  if (const char* env = std::getenv("IEMA_SEED"); env != nullptr && *env) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (*end != '\0') {
      return absl::InvalidArgumentError(
          fmt::format("IEMA_SEED \"{}\" is not an integer", env));
    }
    seed = parsed;
  }
  if (flags.seed.has_value()) seed = *flags.seed;
  inputs.options.seed = seed;
  inputs.options.instance_cap = flags.instance_cap;
  return inputs;
}

int Fail(std::ostream& err, const absl::Status& status, int code = kUsage) {
  err << "error: " << status.message() << "\n";
  return code;
}

std::string Fixed(const json& value) {
  return value.is_number() ? fmt::format("{:.4g}", value.get<double>())
                           : value.dump();
}

// One or two lines describing a payload, for the interactive loop.
std::string Summary(const json& payload) {
  const std::string kind = payload["kind"];
  std::string text =
      fmt::format("{} ({})", payload["symbol"].get<std::string>(), kind);
  if (kind == "attribution") {
    text +=
        fmt::format(": baseline {} prediction {};", Fixed(payload["baseline"]),
                    Fixed(payload["prediction"]));
    for (const json& c : payload["contributions"]) {
      text += fmt::format(" {} {}", c["variable"].get<std::string>(),
                          Fixed(c["value"]));
    }
  } else if (kind == "importance") {
    text += ":";
    for (const json& v : payload["variables"]) {
      text += fmt::format(" {} {}", v["variable"].get<std::string>(),
                          Fixed(v["importance"]));
    }
  } else if (kind == "variable_selection") {
    text += ": " + payload["variable"].get<std::string>();
  } else if (payload.contains("values") && payload["values"].is_array()) {
    text += fmt::format(": {} points", payload["values"].size());
  } else if (payload.contains("bins")) {
    text += fmt::format(": {} bins", payload["bins"].size());
  }
  return text;
}

void PrintNext(const session::Session& session, std::ostream& out) {
  const auto next = session.NextSteps();
  out << "next: " << fmt::format("{}", fmt::join(next.terminals, " "))
      << (next.can_end ? "  (or end)" : "") << "\n";
}

// "SYMBOL row=3 variable=age grid_size=21" or a JSON object.
absl::StatusOr<json> ParseStepLine(const std::string& line) {
  if (!line.empty() && line[0] == '{') {
    json parsed = json::parse(line, nullptr, false);
    if (parsed.is_discarded()) {
      return absl::InvalidArgumentError("step is not valid JSON");
    }
    return parsed;
  }
  std::istringstream words(line);
  std::string word;
  words >> word;
  json step = {{"symbol", word}};
  while (words >> word) {
    const size_t eq = word.find('=');
    if (eq == std::string::npos || eq == 0) {
      return absl::InvalidArgumentError(
          fmt::format("expected key=value, got \"{}\"", word));
    }
    const std::string key = word.substr(0, eq);
    const std::string raw = word.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    if (key == "row") {
      step["instance"] = {{"row", value}};
    } else if (key == "variable") {
      step["variable"] = raw;
    } else {
      step["options"][key] = value;
    }
  }
  return step;
}

int RunRepl(Inputs inputs, std::istream& in, std::ostream& out,
            std::ostream& err) {
  auto created =
      session::Session::Create(inputs.dataset, inputs.model, inputs.options);
  if (!created.ok()) return Fail(err, created.status());
  session::Session& session = *created;
  out << "commands: next, undo, tree, bundle, quit, or a step such as\n"
         "  SHAP_Attribution row=0   Select_Variable variable=age\n";
  PrintNext(session, out);
  std::string line;
  while (out << "iema> " << std::flush, std::getline(in, line)) {
    const size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    if (line == "quit" || line == "exit") break;
    if (line == "next") {
      PrintNext(session, out);
    } else if (line == "undo") {
      const absl::Status undone = session.Undo();
      if (!undone.ok()) {
        err << "error: " << undone.message() << "\n";
      } else {
        PrintNext(session, out);
      }
    } else if (line == "tree") {
      const auto tree = session.Tree();
      if (tree.has_value()) {
        out << grammar::RenderTreeText(grammar::IemaGrammar(), *tree);
      } else {
        out << "the dialogue is not a complete sentence yet\n";
      }
    } else if (line == "bundle") {
      out << session::SerializeBundle(session::ExportBundle(session)) << "\n";
    } else {
      auto step = ParseStepLine(line);
      if (!step.ok()) {
        err << "error: " << step.status().message() << "\n";
        continue;
      }
      auto request = session::StepRequestFromJson(*step, session.dataset());
      if (!request.ok()) {
        err << "error: " << request.status().message() << "\n";
        continue;
      }
      auto applied = session.Apply(*request);
      if (!applied.ok()) {
        err << "error: " << applied.status().message() << "\n";
        continue;
      }
      out << fmt::format("[{}] ", (*applied)->timestamp + 1)
          << Summary(session::PayloadToJson((*applied)->request.symbol,
                                            (*applied)->result))
          << "\n";
      PrintNext(session, out);
    }
  }
  return 0;
}

absl::StatusOr<std::vector<grammar::SymbolId>> Encode(
    const std::vector<std::string>& symbols) {
  return grammar::IemaGrammar().EncodeSentence(symbols);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  const grammar::Grammar& g = grammar::IemaGrammar();
  CLI::App app{"Interactive explanatory model analysis"};
  app.name("iema");
  app.require_subcommand(1);

  // grammar
  CLI::App* grammar_cmd =
      app.add_subcommand("grammar", "membership, next steps, generation")
          ->require_subcommand(1);
  std::vector<std::string> symbols;
  bool as_json = false;
  CLI::App* accept = grammar_cmd->add_subcommand(
      "accept", "parse a sentence and print its canonical tree");
  accept->alias("accepts");
  accept->add_option("symbols", symbols, "terminal symbols");
  accept->add_flag("--json", as_json, "print the tree as JSON");
  CLI::App* next =
      grammar_cmd->add_subcommand("next", "terminals that may follow a prefix");
  next->add_option("symbols", symbols, "terminal symbols");
  CLI::App* tree = grammar_cmd->add_subcommand(
      "tree", "every parse tree of a sentence, as JSON");
  tree->add_option("symbols", symbols, "terminal symbols");
  size_t tree_limit = 16;
  tree->add_option("--limit", tree_limit, "maximum number of trees");
  uint64_t gen_seed = 0;
  size_t gen_max = 20;
  CLI::App* generate =
      grammar_cmd->add_subcommand("generate", "sample a random sentence");
  generate->add_option("--seed", gen_seed, "random seed");
  generate->add_option("--max", gen_max, "expansion budget")
      ->check(CLI::PositiveNumber);
  grammar_cmd->add_subcommand("export", "print the grammar as JSON");

  // explain
  InputFlags explain_flags;
  std::string script_path, out_path, html_path;
  CLI::App* explain =
      app.add_subcommand("explain", "run a step script and emit the bundle");
  AddInputFlags(explain, explain_flags);
  explain->add_option("--script", script_path, "JSON list of steps")
      ->required();
  explain->add_option("--out", out_path, "bundle file (default: stdout)");
  explain->add_option("--html", html_path, "also write an HTML export");

  // session
  InputFlags session_flags;
  CLI::App* repl =
      app.add_subcommand("session", "interactive dialogue on stdin");
  AddInputFlags(repl, session_flags);

  // serve
  InputFlags serve_flags;
  int port = 8080;
  std::string host = "127.0.0.1", static_path;
  CLI::App* serve = app.add_subcommand("serve", "start the HTTP service");
  AddInputFlags(serve, serve_flags);
  serve->add_option("--port", port, "listen port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "listen address");
  serve->add_option("--static", static_path, "UI script served at /");

  // export
  std::string bundle_path, export_out, ui_path;
  CLI::App* export_cmd =
      app.add_subcommand("export", "bundle to a single HTML file");
  export_cmd->add_option("--bundle", bundle_path, "bundle JSON")->required();
  export_cmd->add_option("--out", export_out, "HTML file")->required();
  export_cmd->add_option("--ui", ui_path, "UI script to inline");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::ostringstream message;
    app.exit(e, message, message);
    err << message.str();
    return e.get_exit_code() == 0 ? 0 : kUsage;
  }

  if (grammar_cmd->parsed()) {
    if (generate->parsed()) {
      auto sentence = grammar::Generate(g, gen_max, gen_seed);
      if (!sentence.ok()) return Fail(err, sentence.status());
      out << fmt::format("{}",
                         fmt::join(g.DecodeSentence(sentence->sentence), " "))
          << "\n"
          << grammar::RenderTreeText(g, sentence->tree);
      return 0;
    }
    if (grammar_cmd->got_subcommand("export")) {
      out << g.ToJson().dump(1) << "\n";
      return 0;
    }
    auto sentence = Encode(symbols);
    if (!sentence.ok()) return Fail(err, sentence.status());
    if (next->parsed()) {
      auto steps = grammar::ComputeNextSteps(g, *sentence);
      if (!steps.ok()) return Fail(err, steps.status(), kRejected);
      out << fmt::format("{}",
                         fmt::join(g.DecodeSentence(steps->terminals), "\n"))
          << (steps->terminals.empty() ? "" : "\n")
          << (steps->can_end ? "<end>\n" : "");
      return 0;
    }
    const grammar::ParseResult result = grammar::Parse(g, *sentence);
    if (!result.accepted) {
      err << "rejected: longest valid prefix: " << result.valid_prefix_length
          << "\n";
      return kRejected;
    }
    if (tree->parsed()) {
      json trees = json::array();
      for (const auto& t : grammar::AllParseTrees(g, *sentence, tree_limit)) {
        trees.push_back(grammar::RenderTreeJson(g, t));
      }
      out << json({{"derivation_count", result.derivation_count},
                   {"trees", trees}})
                 .dump()
          << "\n";
      return 0;
    }
    if (as_json) {
      out << grammar::RenderTreeJson(g, *result.tree).dump() << "\n";
    } else {
      out << grammar::RenderTreeText(g, *result.tree);
    }
    if (result.derivation_count > 1) {
      err << "note: the sentence has " << result.derivation_count
          << " parse trees; showing the canonical one\n";
    }
    return 0;
  }

  if (explain->parsed()) {
    auto inputs = LoadInputs(explain_flags);
    if (!inputs.ok()) return Fail(err, inputs.status());
    auto script_text = ReadFile(script_path);
    if (!script_text.ok()) return Fail(err, script_text.status());
    auto steps = ParseScript(*script_text, *inputs->dataset);
    if (!steps.ok()) return Fail(err, steps.status());
    auto session =
        RunScript(inputs->dataset, inputs->model, inputs->options, *steps);
    if (!session.ok()) return Fail(err, session.status(), kRejected);
    const std::string bundle =
        session::SerializeBundle(session::ExportBundle(*session));
    if (out_path.empty()) {
      out << bundle << "\n";
    } else if (const absl::Status written = WriteFile(out_path, bundle + "\n");
               !written.ok()) {
      return Fail(err, written);
    }
    if (!html_path.empty()) {
      auto html = ExportHtml(bundle);
      if (!html.ok()) return Fail(err, html.status());
      if (const absl::Status written = WriteFile(html_path, *html);
          !written.ok()) {
        return Fail(err, written);
      }
    }
    return 0;
  }

  if (repl->parsed()) {
    auto inputs = LoadInputs(session_flags);
    if (!inputs.ok()) return Fail(err, inputs.status());
    return RunRepl(*std::move(inputs), in, out, err);
  }

  if (serve->parsed()) {
    auto inputs = LoadInputs(serve_flags);
    if (!inputs.ok()) return Fail(err, inputs.status());
    std::string ui;
    if (!static_path.empty()) {
      auto text = ReadFile(static_path);
      if (!text.ok()) return Fail(err, text.status());
      ui = *std::move(text);
    }
    Service service(inputs->dataset, inputs->model, inputs->options, ui);
    HttpServer server(service);
    if (const absl::Status started = server.Start(host, port); !started.ok()) {
      return Fail(err, started);
    }
    out << "listening on http://" << host << ":" << server.port() << "\n"
        << std::flush;
    server.Wait();
    return 0;
  }

  if (export_cmd->parsed()) {
    auto bundle = ReadFile(bundle_path);
    if (!bundle.ok()) return Fail(err, bundle.status());
    std::string ui;
    if (!ui_path.empty()) {
      auto text = ReadFile(ui_path);
      if (!text.ok()) return Fail(err, text.status());
      ui = *std::move(text);
    }
    // Files written by "explain" end with a newline.
    std::string_view text = *bundle;
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
      text.remove_suffix(1);
    }
    auto html = ExportHtml(text, ui);
    if (!html.ok()) return Fail(err, html.status());
    if (const absl::Status written = WriteFile(export_out, *html);
        !written.ok()) {
      return Fail(err, written);
    }
    return 0;
  }
  return kUsage;
}

}  // namespace iema::interface
