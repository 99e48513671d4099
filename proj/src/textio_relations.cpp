#include "sbc/textio.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <map>

namespace sbc
{

using json = nlohmann::ordered_json;

std::string_view to_string(ImportErrorCode code) noexcept
{
  switch (code) {
    case ImportErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ImportErrorCode::BadCell: return "BadCell";
    case ImportErrorCode::BadDirection: return "BadDirection";
  }
  return "Unknown";
}

ImportError::ImportError(
  ImportErrorCode code, std::size_t row, std::size_t column, const std::string & message)
    : std::runtime_error(
        std::string(to_string(code)) + " at row " + std::to_string(row) + ", column " +
        std::to_string(column) + ": " + message),
      code_(code),
      row_(row),
      column_(column)
{
}

std::optional<RelationKind> parse_relation_kind(std::string_view text) noexcept
{
  if (text == "itgr") return RelationKind::Itgr;
  if (text == "class") return RelationKind::Class;
  if (text == "state") return RelationKind::State;
  if (text == "sequence") return RelationKind::Sequence;
  return std::nullopt;
}

std::vector<std::string> relation_columns(RelationKind kind)
{
  switch (kind) {
    case RelationKind::Itgr: return {"REGION", "S1", "N", "XI", "LAMBDA", "THETA", "GAMMA", "S2"};
    case RelationKind::Class: return {"C", "LAMBDA", "THETA"};
    case RelationKind::State: return {"REGION", "S1", "N", "LAMBDA", "S2"};
    case RelationKind::Sequence: return {"REGION", "E", "N", "XI", "LAMBDA", "THETA", "GAMMA"};
  }
  return {};
}

std::vector<std::string> row_cells(const ItgrRow & row)
{
  const auto & t = row.transition;
  const auto & ia = t.interaction;
  return {row.region.str(), t.source.str(), std::string(to_string(ia.tag)), ia.caller.notation(),
          ia.op_name.str(), format_params(ia.params), ia.callee.notation(), t.target.str()};
}

std::vector<std::string> row_cells(const ClassRow & row)
{
  return {row.class_name.notation(), row.signature.op_name.str(), format_params(row.signature.params)};
}

std::vector<std::string> row_cells(const Identifier & region, const StateRow & row)
{
  return {region.str(), row.source.str(), std::string(to_string(row.tag)), row.op_name.str(), row.target.str()};
}

std::vector<std::string> row_cells(const Identifier & region, const SequenceRow & row)
{
  return {region.str(), std::to_string(row.order), std::string(to_string(row.tag)), row.caller.notation(),
          row.op_name.str(), format_params(row.params), row.callee.notation()};
}

namespace
{

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

using Table = std::vector<std::vector<std::string>>;

// --- row encoding -------------------------------------------------------------

Table encode(const ItgrRelation & relation)
{
  Table out;
  for (const auto & row : relation.rows) out.push_back(row_cells(row));
  return out;
}

Table encode(const ClassRelation & relation)
{
  Table out;
  for (const auto & row : relation.rows) out.push_back(row_cells(row));
  return out;
}

Table encode(const StateRelationComposite & relation)
{
  Table out;
  for (const auto & region : relation.regions) {
    for (const auto & row : region.rows) out.push_back(row_cells(region.region, row));
  }
  return out;
}

Table encode(const SequenceRelationComposite & relation)
{
  Table out;
  for (const auto & region : relation.regions) {
    for (const auto & row : region.rows) out.push_back(row_cells(region.region, row));
  }
  return out;
}

// --- row decoding -------------------------------------------------------------

class CellReader
{
public:
  CellReader(const std::vector<std::string> & cells, std::size_t row) : cells_(cells), row_(row) {}

  Identifier ident(std::size_t col) const
  {
    auto text = trim(cells_[col]);
    if (!Identifier::is_valid(text)) bad(col, "expected an identifier, found '" + std::string(text) + "'");
    return Identifier(std::string(text));
  }

  Agent agent(std::size_t col) const
  {
    auto text = trim(cells_[col]);
    const bool object = !text.empty() && text.front() == ':';
    if (object) text.remove_prefix(1);
    if (!Identifier::is_valid(text)) {
      bad(col, "expected an agent (':Object' or 'Actor'), found '" + cells_[col] + "'");
    }
    return object ? Agent::object(std::string(text)) : Agent::actor(std::string(text));
  }

  Agent object(std::size_t col) const
  {
    auto a = agent(col);
    if (!a.is_object()) bad(col, "expected an object (':Name'), found '" + cells_[col] + "'");
    return a;
  }

  Tag tag(std::size_t col) const
  {
    auto t = parse_tag(trim(cells_[col]));
    if (!t) bad(col, "expected CAL or RET, found '" + cells_[col] + "'");
    return *t;
  }

  ParamList params(std::size_t col) const
  {
    auto parsed = parse_param_cell(cells_[col]);
    if (auto * err = std::get_if<ParamCellError>(&parsed)) {
      throw ImportError(
        err->bad_direction ? ImportErrorCode::BadDirection : ImportErrorCode::BadCell, row_, col + 1,
        err->message);
    }
    return std::get<ParamList>(std::move(parsed));
  }

  std::size_t order(std::size_t col) const
  {
    auto text = trim(cells_[col]);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
      bad(col, "expected an execution order >= 1, found '" + cells_[col] + "'");
    }
    return value;
  }

private:
  [[noreturn]] void bad(std::size_t col, const std::string & message) const
  {
    throw ImportError(ImportErrorCode::BadCell, row_, col + 1, message);
  }

  const std::vector<std::string> & cells_;
  std::size_t row_;
};

// Appends `row` to the last region if it has the same name, else opens one.
template <class Region, class Row>
void append_to_region(std::vector<Region> & regions, Identifier name, Row row)
{
  if (regions.empty() || regions.back().region != name) {
    regions.push_back(Region{std::move(name), {}});
  }
  regions.back().rows.push_back(std::move(row));
}

AnyRelation decode(const Table & table, RelationKind kind)
{
  const std::size_t width = relation_columns(kind).size();
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (table[r].size() != width) {
      throw ImportError(
        ImportErrorCode::BadCell, r + 1, std::min(table[r].size(), width) + 1,
        "expected " + std::to_string(width) + " cells, found " + std::to_string(table[r].size()));
    }
  }

  switch (kind) {
    case RelationKind::Itgr: {
      ItgrRelation out;
      for (std::size_t r = 0; r < table.size(); ++r) {
        CellReader c(table[r], r + 1);
        out.rows.push_back(
          {c.ident(0), Transition{c.ident(1), Interaction{c.tag(2), c.agent(3), c.ident(4), c.params(5), c.agent(6)},
                                  c.ident(7)}});
      }
      return out;
    }
    case RelationKind::Class: {
      std::vector<ClassRow> rows;
      for (std::size_t r = 0; r < table.size(); ++r) {
        CellReader c(table[r], r + 1);
        rows.push_back({c.object(0), OpSignature{c.ident(1), c.params(2)}});
      }
      return make_class_relation(std::move(rows));
    }
    case RelationKind::State: {
      StateRelationComposite out;
      for (std::size_t r = 0; r < table.size(); ++r) {
        CellReader c(table[r], r + 1);
        append_to_region(out.regions, c.ident(0), StateRow{c.ident(1), c.tag(2), c.ident(3), c.ident(4)});
      }
      return out;
    }
    case RelationKind::Sequence: {
      SequenceRelationComposite out;
      for (std::size_t r = 0; r < table.size(); ++r) {
        CellReader c(table[r], r + 1);
        append_to_region(
          out.regions, c.ident(0),
          SequenceRow{c.order(1), c.tag(2), c.agent(3), c.ident(4), c.params(5), c.agent(6)});
      }
      return out;
    }
  }
  return ItgrRelation{};
}

// --- CSV ----------------------------------------------------------------------

bool needs_quotes(std::string_view cell)
{
  return cell.find_first_of(",\";\r\n") != std::string_view::npos;
}

void write_cell(std::string & out, std::string_view cell)
{
  if (!needs_quotes(cell)) {
    out += cell;
    return;
  }
  out += '"';
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
}

std::string write_csv(RelationKind kind, const Table & table)
{
  std::string out;
  auto write_row = [&](const std::vector<std::string> & row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      write_cell(out, row[i]);
    }
    out += '\n';
  };
  write_row(relation_columns(kind));
  for (const auto & row : table) write_row(row);
  return out;
}

// RFC 4180 records; LF or CRLF line ends. Row numbers in errors count the
// header as row 0.
Table read_csv(std::string_view text)
{
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  Table rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool cell_was_quoted = false;
  bool row_has_content = false;
  std::size_t i = 0;

  auto end_cell = [&] {
    row.push_back(std::move(cell));
    cell.clear();
    cell_was_quoted = false;
  };
  auto end_row = [&] {
    end_cell();
    rows.push_back(std::move(row));
    row.clear();
    row_has_content = false;
  };

  while (i < text.size()) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
        continue;
      }
      cell += ch;
      ++i;
      continue;
    }
    switch (ch) {
      case '"':
        if (!cell.empty() || cell_was_quoted) {
          throw ImportError(
            ImportErrorCode::BadCell, rows.size(), row.size() + 1, "stray quote inside an unquoted cell");
        }
        quoted = true;
        cell_was_quoted = true;
        row_has_content = true;
        ++i;
        break;
      case ',':
        end_cell();
        row_has_content = true;
        ++i;
        break;
      case '\r':
        ++i;
        break;
      case '\n':
        if (row_has_content || !cell.empty()) end_row();
        ++i;
        break;
      default:
        if (cell_was_quoted) {
          throw ImportError(
            ImportErrorCode::BadCell, rows.size(), row.size() + 1, "text after a closing quote");
        }
        cell += ch;
        row_has_content = true;
        ++i;
        break;
    }
  }
  if (quoted) {
    throw ImportError(ImportErrorCode::BadCell, rows.size(), row.size() + 1, "unterminated quoted cell");
  }
  if (row_has_content || !cell.empty()) end_row();
  return rows;
}

std::string write_json(RelationKind kind, const Table & table)
{
  const auto columns = relation_columns(kind);
  json out = json::array();
  for (const auto & row : table) {
    json obj = json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == "E") {
        obj[columns[i]] = std::stoull(row[i]);
      } else {
        obj[columns[i]] = row[i];
      }
    }
    out.push_back(std::move(obj));
  }
  return out.dump(2) + "\n";
}

Table read_json(std::string_view text, RelationKind kind)
{
  const auto columns = relation_columns(kind);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error & e) {
    throw ImportError(ImportErrorCode::BadCell, 0, 0, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ImportError(ImportErrorCode::HeaderMismatch, 0, 0, "expected a JSON array of rows");
  Table table;
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const auto & obj = doc[r];
    if (!obj.is_object() || obj.size() != columns.size()) {
      throw ImportError(
        ImportErrorCode::HeaderMismatch, r + 1, 0, "expected an object with exactly the relation's columns");
    }
    std::vector<std::string> row;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      auto it = obj.find(columns[c]);
      if (it == obj.end()) {
        throw ImportError(ImportErrorCode::HeaderMismatch, r + 1, c + 1, "missing field '" + columns[c] + "'");
      }
      if (it->is_string()) {
        row.push_back(it->get<std::string>());
      } else if (columns[c] == "E" && it->is_number_integer()) {
        row.push_back(it->dump());
      } else {
        throw ImportError(ImportErrorCode::BadCell, r + 1, c + 1, "unexpected JSON type for '" + columns[c] + "'");
      }
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace

std::variant<ParamList, ParamCellError> parse_param_cell(std::string_view text)
{
  std::vector<Parameter> params;
  if (trim(text).empty()) return ParamList{};
  std::size_t start = 0;
  for (;;) {
    const std::size_t semi = text.find(';', start);
    const std::string_view item = trim(text.substr(start, semi == std::string_view::npos ? semi : semi - start));

    // dir name [: type]
    const std::size_t space = item.find_first_of(" \t");
    if (space == std::string_view::npos) {
      return ParamCellError{false, "expected 'direction name', found '" + std::string(item) + "'"};
    }
    const auto dir = parse_direction(item.substr(0, space));
    if (!dir) {
      return ParamCellError{
        true, "parameter direction must be in, out or inout, found '" + std::string(item.substr(0, space)) + "'"};
    }
    std::string_view rest = trim(item.substr(space));
    std::string_view name = rest;
    std::optional<std::string_view> type;
    if (auto colon = rest.find(':'); colon != std::string_view::npos) {
      name = trim(rest.substr(0, colon));
      type = trim(rest.substr(colon + 1));
    }
    if (!Identifier::is_valid(name) || (type && !Identifier::is_valid(*type))) {
      return ParamCellError{false, "malformed parameter '" + std::string(item) + "'"};
    }
    Parameter p{*dir, Identifier(std::string(name)), std::nullopt};
    if (type) p.type = Identifier(std::string(*type));
    const bool duplicate =
      std::any_of(params.begin(), params.end(), [&](const Parameter & q) { return q.name == p.name; });
    if (duplicate) return ParamCellError{false, "parameter '" + std::string(name) + "' occurs twice"};
    params.push_back(std::move(p));

    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return ParamList(std::move(params));
}

ItgrRelation itgr_relation(const SystemItg & system)
{
  ItgrRelation out;
  for (const auto & region : system.regions()) {
    for (const auto & t : region.transitions) out.rows.push_back({region.name, t});
  }
  return out;
}

SystemItg to_system(const ItgrRelation & relation, Identifier name)
{
  std::vector<Itg> regions;
  std::map<Identifier, std::size_t> index;
  for (const auto & row : relation.rows) {
    auto [it, inserted] = index.try_emplace(row.region, regions.size());
    if (inserted) regions.push_back(Itg{row.region, row.transition.source, {}});
    regions[it->second].transitions.push_back(row.transition);
  }
  return compose(std::move(regions), std::move(name));
}

std::string export_relation_csv(const ItgrRelation & r) { return write_csv(RelationKind::Itgr, encode(r)); }
std::string export_relation_csv(const SystemItg & s) { return export_relation_csv(itgr_relation(s)); }
std::string export_relation_csv(const ClassRelation & r) { return write_csv(RelationKind::Class, encode(r)); }
std::string export_relation_csv(const StateRelationComposite & r) { return write_csv(RelationKind::State, encode(r)); }
std::string export_relation_csv(const SequenceRelationComposite & r)
{
  return write_csv(RelationKind::Sequence, encode(r));
}
std::string export_relation_csv(const AnyRelation & r)
{
  return std::visit([](const auto & rel) { return export_relation_csv(rel); }, r);
}

AnyRelation import_relation_csv(std::string_view text, RelationKind kind)
{
  Table table = read_csv(text);
  const auto columns = relation_columns(kind);
  if (table.empty()) throw ImportError(ImportErrorCode::HeaderMismatch, 0, 1, "missing header row");
  std::vector<std::string> header;
  for (const auto & cell : table.front()) header.emplace_back(trim(cell));
  if (header != columns) {
    std::string expected;
    for (const auto & c : columns) expected += (expected.empty() ? "" : ",") + c;
    throw ImportError(ImportErrorCode::HeaderMismatch, 0, 1, "expected header " + expected);
  }
  table.erase(table.begin());
  return decode(table, kind);
}

std::string export_relation_json(const ItgrRelation & r) { return write_json(RelationKind::Itgr, encode(r)); }
std::string export_relation_json(const SystemItg & s) { return export_relation_json(itgr_relation(s)); }
std::string export_relation_json(const ClassRelation & r) { return write_json(RelationKind::Class, encode(r)); }
std::string export_relation_json(const StateRelationComposite & r)
{
  return write_json(RelationKind::State, encode(r));
}
std::string export_relation_json(const SequenceRelationComposite & r)
{
  return write_json(RelationKind::Sequence, encode(r));
}
std::string export_relation_json(const AnyRelation & r)
{
  return std::visit([](const auto & rel) { return export_relation_json(rel); }, r);
}

AnyRelation import_relation_json(std::string_view text, RelationKind kind)
{
  return decode(read_json(text, kind), kind);
}

}  // namespace sbc
