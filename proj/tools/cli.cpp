#include "cli.hpp"

#include "sbc/conform.hpp"
#include "sbc/emit.hpp"
#include "sbc/project.hpp"
#include "sbc/simulate.hpp"
#include "sbc/textio.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace sbc::cli
{
namespace
{

using json = nlohmann::ordered_json;

const std::map<std::string, View> kViews{
  {"class", View::Class}, {"state", View::State}, {"sequence", View::Sequence}};

const std::map<std::string, Format> kFormats{
  {"table", Format::Table}, {"csv", Format::Csv},  {"json", Format::Json},
  {"plantuml", Format::Plantuml}, {"dot", Format::Dot}, {"trace", Format::Trace}};

std::string_view name_of(Format f)
{
  for (const auto & [name, value] : kFormats) {
    if (value == f) return name;
  }
  return "?";
}

std::string_view name_of(Command c)
{
  switch (c) {
    case Command::Validate: return "validate";
    case Command::Project: return "project";
    case Command::Check: return "check";
    case Command::Emit: return "emit";
    case Command::Simulate: return "simulate";
  }
  return "?";
}

std::vector<Format> allowed_formats(Command c)
{
  switch (c) {
    case Command::Validate: return {Format::Table, Format::Json};
    case Command::Project: return {Format::Table, Format::Csv, Format::Json};
    case Command::Check: return {Format::Table, Format::Json};
    case Command::Emit: return {Format::Plantuml, Format::Dot};
    case Command::Simulate: return {Format::Trace, Format::Json};
  }
  return {};
}

// --- output helpers ------------------------------------------------------------

std::string render_table(const std::vector<std::string> & header, const std::vector<std::vector<std::string>> & rows)
{
  std::vector<std::size_t> width(header.size(), 0);
  auto measure = [&](const std::vector<std::string> & row) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  };
  measure(header);
  for (const auto & r : rows) measure(r);
  std::string out;
  auto line = [&](const std::vector<std::string> & row) {
    std::string text;
    for (std::size_t i = 0; i < row.size(); ++i) {
      text += row[i];
      if (i + 1 < row.size()) text += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out += text + "\n";
  };
  line(header);
  for (const auto & r : rows) line(r);
  return out;
}

// Drops the leading REGION column of composite relation cells.
std::vector<std::string> without_region(std::vector<std::string> cells)
{
  cells.erase(cells.begin());
  return cells;
}

template <class Region>
std::string composite_table(const std::vector<Region> & regions, RelationKind kind)
{
  const auto header = without_region(relation_columns(kind));
  std::string out;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (i) out += "\n||\n\n";
    out += "REGION " + regions[i].region.str() + "\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto & row : regions[i].rows) rows.push_back(without_region(row_cells(regions[i].region, row)));
    out += render_table(header, rows);
  }
  return out;
}

json row_object(RelationKind kind, const std::vector<std::string> & cells)
{
  const auto columns = relation_columns(kind);
  json obj = json::object();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == "E") {
      obj[columns[i]] = std::stoull(cells[i]);
    } else {
      obj[columns[i]] = cells[i];
    }
  }
  return obj;
}

json diagnostics_json(const std::vector<Diagnostic> & diagnostics)
{
  json out = json::array();
  for (const auto & d : diagnostics) {
    json obj = {{"severity", std::string(to_string(d.severity))},
                {"code", std::string(to_string(d.code))},
                {"message", d.message},
                {"region", d.region}};
    obj["transition"] = d.transition_index ? json(*d.transition_index) : json(nullptr);
    out.push_back(std::move(obj));
  }
  return out;
}

std::string format_lint(const Diagnostic & d)
{
  std::string out = d.region;
  if (d.transition_index) out += "#" + std::to_string(*d.transition_index + 1);
  out += ": ";
  out += to_string(d.severity);
  out += ": ";
  out += to_string(d.code);
  out += ": " + d.message;
  return out;
}

class Reporter
{
public:
  Reporter(std::ostream & err, bool as_json) : err_(err), as_json_(as_json) {}

  ~Reporter()
  {
    if (as_json_ && !entries_.empty()) err_ << entries_.dump(2) << "\n";
  }

  void parse(const ParseDiagnostic & d, const std::string & file)
  {
    if (as_json_) {
      entries_.push_back({{"severity", std::string(to_string(d.severity))},
                          {"message", d.message},
                          {"file", file},
                          {"line", d.span.line},
                          {"column", d.span.column},
                          {"length", d.span.length}});
    } else {
      err_ << format_diagnostic(d, file) << "\n";
    }
  }

  void lint(const Diagnostic & d)
  {
    if (as_json_) {
      entries_.push_back(diagnostics_json({d}).front());
    } else {
      err_ << format_lint(d) << "\n";
    }
  }

  void message(std::string_view severity, const std::string & text, const std::string & file = {})
  {
    if (as_json_) {
      entries_.push_back({{"severity", std::string(severity)}, {"message", text}, {"file", file}});
    } else {
      err_ << (file.empty() ? "" : file + ": ") << severity << ": " << text << "\n";
    }
  }

private:
  std::ostream & err_;
  bool as_json_;
  json entries_ = json::array();
};

std::optional<std::string> read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool has_extension(const std::string & path, std::string_view ext)
{
  return std::filesystem::path(path).extension() == ext;
}

struct Failure
{
  int code;
};

// Loads a `.sbc` model, or an ITGR relation from `.csv` / `.json`.
SystemItg load_system(const std::string & path, Reporter & report)
{
  auto text = read_file(path);
  if (!text) {
    report.message("error", "cannot read file", path);
    throw Failure{kUsageError};
  }
  if (has_extension(path, ".csv") || has_extension(path, ".json")) {
    std::string stem = std::filesystem::path(path).stem().string();
    if (!Identifier::is_valid(stem)) stem = "system";
    try {
      auto rel = has_extension(path, ".csv") ? import_relation_csv(*text, RelationKind::Itgr)
                                             : import_relation_json(*text, RelationKind::Itgr);
      return to_system(std::get<ItgrRelation>(rel), Identifier(stem));
    } catch (const ImportError & e) {
      report.message("error", e.what(), path);
    } catch (const ModelError & e) {
      report.message("error", e.what(), path);
    }
    throw Failure{kParseError};
  }
  auto parsed = parse_model(*text);
  for (const auto & d : parsed.diagnostics) report.parse(d, path);
  if (!parsed.ok()) throw Failure{kParseError};
  return std::move(*parsed.system);
}

AnyRelation load_candidate(const std::string & path, RelationKind kind, Reporter & report)
{
  auto text = read_file(path);
  if (!text) {
    report.message("error", "cannot read file", path);
    throw Failure{kUsageError};
  }
  try {
    return has_extension(path, ".json") ? import_relation_json(*text, kind) : import_relation_csv(*text, kind);
  } catch (const ImportError & e) {
    report.message("error", e.what(), path);
  }
  throw Failure{kParseError};
}

RelationKind relation_kind(View v)
{
  switch (v) {
    case View::Class: return RelationKind::Class;
    case View::State: return RelationKind::State;
    case View::Sequence: return RelationKind::Sequence;
  }
  return RelationKind::Class;
}

std::string view_name(View v)
{
  for (const auto & [name, value] : kViews) {
    if (value == v) return name;
  }
  return "?";
}

// --- commands -------------------------------------------------------------------

int cmd_validate(const CliConfig & cfg, const SystemItg & system, std::ostream & out)
{
  const auto diagnostics = validate(system);
  if (cfg.format == Format::Json) {
    out << diagnostics_json(diagnostics).dump(2) << "\n";
  } else if (diagnostics.empty()) {
    out << system.name().str() << ": ok\n";
  } else {
    for (const auto & d : diagnostics) out << format_lint(d) << "\n";
  }
  if (has_errors(diagnostics)) return kFailure;
  if (cfg.strict && !diagnostics.empty()) return kFailure;
  return kSuccess;
}

int cmd_project(const CliConfig & cfg, const SystemItg & system, std::ostream & out, Reporter & report)
{
  const View view = *cfg.view;
  int status = kSuccess;
  AnyRelation relation;
  if (view == View::Class) {
    relation = project_class(system);
  } else if (view == View::State) {
    relation = project_state(system);
  } else {
    auto projection = project_sequence(system);
    for (const auto & w : projection.warnings) report.lint(w);
    if (cfg.strict && !projection.warnings.empty()) status = kFailure;
    relation = std::move(projection.relation);
  }

  if (cfg.format == Format::Csv) {
    out << export_relation_csv(relation);
  } else if (cfg.format == Format::Json) {
    out << export_relation_json(relation);
  } else if (const auto * cls = std::get_if<ClassRelation>(&relation)) {
    std::vector<std::vector<std::string>> rows;
    for (const auto & r : cls->rows) rows.push_back(row_cells(r));
    out << render_table(relation_columns(RelationKind::Class), rows);
  } else if (const auto * st = std::get_if<StateRelationComposite>(&relation)) {
    out << composite_table(st->regions, RelationKind::State);
  } else {
    out << composite_table(std::get<SequenceRelationComposite>(relation).regions, RelationKind::Sequence);
  }
  return status;
}

void report_rows_text(std::ostream & out, std::string_view label, const std::vector<std::vector<std::string>> & rows)
{
  out << "  " << label << " (" << rows.size() << ")\n";
  for (const auto & cells : rows) {
    std::string line;
    for (const auto & c : cells) line += (line.empty() ? "" : " | ") + c;
    out << "    " << line << "\n";
  }
}

int cmd_check(const CliConfig & cfg, const SystemItg & system, std::ostream & out, Reporter & report)
{
  const View view = *cfg.view;
  const RelationKind kind = relation_kind(view);
  AnyRelation candidate = load_candidate(*cfg.against, kind, report);

  bool conformant = false;
  json doc = {{"view", view_name(view)}};
  std::string text = "view: " + view_name(view) + "\n";

  if (view == View::Class) {
    const auto rep = check_class_view(system, std::get<ClassRelation>(candidate));
    conformant = rep.conformant();
    std::vector<std::vector<std::string>> missing;
    std::vector<std::vector<std::string>> extra;
    json jm = json::array();
    json je = json::array();
    for (const auto & r : rep.missing) {
      missing.push_back(row_cells(r));
      jm.push_back(row_object(kind, missing.back()));
    }
    for (const auto & r : rep.extra) {
      extra.push_back(row_cells(r));
      je.push_back(row_object(kind, extra.back()));
    }
    doc["conformant"] = conformant;
    doc["missing"] = std::move(jm);
    doc["extra"] = std::move(je);
    std::ostringstream body;
    report_rows_text(body, "missing", missing);
    report_rows_text(body, "extra", extra);
    text += std::string("conformant: ") + (conformant ? "yes" : "no") + "\n" + body.str();
  } else {
    auto emit_composite = [&](const auto & rep) {
      conformant = rep.conformant();
      doc["conformant"] = conformant;
      json regions = json::array();
      std::ostringstream body;
      for (const auto & delta : rep.regions) {
        const Identifier region(delta.region);
        std::vector<std::vector<std::string>> missing;
        std::vector<std::vector<std::string>> extra;
        json jm = json::array();
        json je = json::array();
        for (const auto & r : delta.missing) {
          missing.push_back(row_cells(region, r));
          jm.push_back(row_object(kind, missing.back()));
        }
        for (const auto & r : delta.extra) {
          extra.push_back(row_cells(region, r));
          je.push_back(row_object(kind, extra.back()));
        }
        regions.push_back({{"region", delta.region},
                           {"conformant", delta.conformant()},
                           {"region_missing", delta.region_missing},
                           {"region_extra", delta.region_extra},
                           {"missing", std::move(jm)},
                           {"extra", std::move(je)}});
        body << "region " << delta.region << ": " << (delta.conformant() ? "conformant" : "nonconformant");
        if (delta.region_missing) body << " (absent from candidate)";
        if (delta.region_extra) body << " (not in projection)";
        body << "\n";
        if (!delta.conformant()) {
          report_rows_text(body, "missing", missing);
          report_rows_text(body, "extra", extra);
        }
      }
      doc["regions"] = std::move(regions);
      text += std::string("conformant: ") + (conformant ? "yes" : "no") + "\n" + body.str();
    };
    if (view == View::State) {
      emit_composite(check_state_view(system, std::get<StateRelationComposite>(candidate)));
    } else {
      emit_composite(check_sequence_view(system, std::get<SequenceRelationComposite>(candidate)));
    }
  }

  if (cfg.format == Format::Json) {
    out << doc.dump(2) << "\n";
  } else {
    out << text;
  }
  return conformant ? kSuccess : kFailure;
}

int cmd_emit(const CliConfig & cfg, const SystemItg & system, std::ostream & out, Reporter & report)
{
  if (cfg.format == Format::Dot) {
    out << emit_itg_graph(system);
    return kSuccess;
  }
  switch (*cfg.view) {
    case View::Class: out << emit_class_diagram(project_class(system)); break;
    case View::State: out << emit_state_diagram(project_state(system), state_diagram_context(system)); break;
    case View::Sequence: {
      auto projection = project_sequence(system);
      for (const auto & w : projection.warnings) report.lint(w);
      out << emit_sequence_diagram(projection.relation);
      if (cfg.strict && !projection.warnings.empty()) return kFailure;
      break;
    }
  }
  return kSuccess;
}

int cmd_simulate(const CliConfig & cfg, const SystemItg & system, std::ostream & out)
{
  const Trace trace = run(system, *cfg.steps, cfg.seed);
  out << (cfg.format == Format::Json ? trace_to_json(trace) : format_trace(trace));
  return kSuccess;
}

}  // namespace

std::variant<CliConfig, UsageError, HelpText> parse_args(const std::vector<std::string> & args)
{
  CLI::App app{"Projects class, state and sequence views from interaction transition graphs.", "sbc"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string view;
  std::string format;
  std::uint64_t steps = 0;

  auto common = [&](CLI::App * sub) {
    sub->add_option("input", cfg.input, "Model file (.sbc), or an ITGR relation (.csv/.json)")->required();
    sub->add_option("--format", format, "Output format");
    sub->add_option("--out", cfg.out, "Write results to this file instead of stdout");
    sub->add_flag("--json-diagnostics", cfg.json_diagnostics, "Write diagnostics to stderr as JSON");
    sub->add_flag("--strict", cfg.strict, "Treat warnings as failures");
  };
  auto with_view = [&](CLI::App * sub) {
    sub->add_option("--view", view, "class, state or sequence");
  };

  auto * validate_cmd = app.add_subcommand("validate", "Lint a model");
  common(validate_cmd);
  auto * project_cmd = app.add_subcommand("project", "Project a view relation");
  common(project_cmd);
  with_view(project_cmd);
  auto * check_cmd = app.add_subcommand("check", "Check a view relation against the projection");
  common(check_cmd);
  with_view(check_cmd);
  check_cmd->add_option("--against", cfg.against, "Candidate view relation (.csv or .json)");
  auto * emit_cmd = app.add_subcommand("emit", "Emit diagram text");
  common(emit_cmd);
  with_view(emit_cmd);
  auto * simulate_cmd = app.add_subcommand("simulate", "Simulate the composed system");
  common(simulate_cmd);
  auto * steps_opt = simulate_cmd->add_option("--steps", steps, "Number of steps");
  simulate_cmd->add_option("--seed", cfg.seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    return HelpText{app.help()};
  } catch (const CLI::CallForAllHelp &) {
    return HelpText{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError & e) {
    return UsageError{e.what()};
  }

  if (validate_cmd->parsed()) cfg.command = Command::Validate;
  if (project_cmd->parsed()) cfg.command = Command::Project;
  if (check_cmd->parsed()) cfg.command = Command::Check;
  if (emit_cmd->parsed()) cfg.command = Command::Emit;
  if (simulate_cmd->parsed()) cfg.command = Command::Simulate;
  const std::string command{name_of(cfg.command)};

  if (!view.empty()) {
    auto it = kViews.find(view);
    if (it == kViews.end()) return UsageError{"unknown view '" + view + "' (class, state, sequence)"};
    cfg.view = it->second;
  }

  const auto allowed = allowed_formats(cfg.command);
  cfg.format = allowed.front();
  if (!format.empty()) {
    auto it = kFormats.find(format);
    if (it == kFormats.end() || std::find(allowed.begin(), allowed.end(), it->second) == allowed.end()) {
      std::string names;
      for (auto f : allowed) names += (names.empty() ? "" : ", ") + std::string(name_of(f));
      return UsageError{"format '" + format + "' is not available for " + command + " (" + names + ")"};
    }
    cfg.format = it->second;
  }

  const bool needs_view = cfg.command == Command::Project || cfg.command == Command::Check ||
                          (cfg.command == Command::Emit && cfg.format != Format::Dot);
  if (needs_view && !cfg.view) return UsageError{command + " requires --view"};
  if (cfg.command == Command::Check && !cfg.against) return UsageError{"check requires --against"};
  if (cfg.command == Command::Simulate) {
    if (steps_opt->count() == 0) return UsageError{"simulate requires --steps"};
    cfg.steps = steps;
  }
  return cfg;
}

int run(const CliConfig & config, std::ostream & out, std::ostream & err)
{
  std::ostringstream buffer;
  int status = kSuccess;
  {
    Reporter report(err, config.json_diagnostics);
    try {
      const SystemItg system = load_system(config.input, report);
      switch (config.command) {
        case Command::Validate: status = cmd_validate(config, system, buffer); break;
        case Command::Project: status = cmd_project(config, system, buffer, report); break;
        case Command::Check: status = cmd_check(config, system, buffer, report); break;
        case Command::Emit: status = cmd_emit(config, system, buffer, report); break;
        case Command::Simulate: status = cmd_simulate(config, system, buffer); break;
      }
    } catch (const Failure & f) {
      return f.code;
    } catch (const ModelError & e) {
      report.message("error", e.what(), config.input);
      return kFailure;
    }
  }

  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary);
    if (!file || !(file << buffer.str())) {
      err << *config.out << ": error: cannot write file\n";
      return kUsageError;
    }
  } else {
    out << buffer.str();
  }
  return status;
}

int main(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  auto parsed = parse_args(args);
  if (auto * help = std::get_if<HelpText>(&parsed)) {
    out << help->text;
    return kSuccess;
  }
  if (auto * usage = std::get_if<UsageError>(&parsed)) {
    err << "sbc: " << usage->message << "\n";
    return kUsageError;
  }
  return run(std::get<CliConfig>(parsed), out, err);
}

}  // namespace sbc::cli
