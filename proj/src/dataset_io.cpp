#include "actnext/dataset_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "actnext/error.hpp"

namespace actnext {

namespace {

std::vector<std::string> split_csv_row(const std::string& line, std::size_t line_no,
                                       const std::string& path) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (quoted)
    throw UsageError(path + ": row " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

std::vector<std::string> parse_element(const std::string& field) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : field) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string format_element(const std::vector<std::string>& tokens) {
  std::string joined;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) joined += ' ';
    joined += tokens[i];
  }
  if (joined.find(' ') != std::string::npos || joined.find(',') != std::string::npos ||
      joined.find('"') != std::string::npos)
    return '"' + joined + '"';
  return joined;
}

const char* kHeader = "intervention,index,lv,li,ls,rv,ri,rs";

}  // namespace

Dataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line) || line.empty())
    throw UsageError(path + ": row 1: empty file or missing header");
  {
    auto header = split_csv_row(line, 1, path);
    auto expected = split_csv_row(kHeader, 1, path);
    if (header != expected)
      throw UsageError(path + ": row 1: expected header '" + kHeader + "'");
  }

  struct Row {
    std::size_t line_no;
    Activity activity;
  };
  std::vector<std::string> order;  // interventions by first appearance
  std::map<std::string, std::map<std::int64_t, Row>> by_intervention;

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_row(line, line_no, path);
    if (fields.size() != 8)
      throw UsageError(path + ": row " + std::to_string(line_no) + ": expected 8 columns, got " +
                       std::to_string(fields.size()));
    const std::string& id = fields[0];
    if (id.empty())
      throw UsageError(path + ": row " + std::to_string(line_no) + ": empty intervention id");
    std::int64_t idx;
    try {
      std::size_t used = 0;
      idx = std::stoll(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError(path + ": row " + std::to_string(line_no) + ": bad index '" +
                       fields[1] + "'");
    }
    if (idx < 1)
      throw UsageError(path + ": row " + std::to_string(line_no) + ": index must be >= 1");

    Activity a;
    a.left.verb = parse_element(fields[2]);
    a.left.instrument = parse_element(fields[3]);
    a.left.structure = parse_element(fields[4]);
    a.right.verb = parse_element(fields[5]);
    a.right.instrument = parse_element(fields[6]);
    a.right.structure = parse_element(fields[7]);

    auto [group_it, fresh_group] = by_intervention.try_emplace(id);
    if (fresh_group) order.push_back(id);
    auto [it, fresh] = group_it->second.try_emplace(idx, Row{line_no, std::move(a)});
    if (!fresh)
      throw UsageError(path + ": row " + std::to_string(line_no) + ": duplicate index " +
                       std::to_string(idx) + " in intervention " + id);
  }
  if (order.empty()) throw UsageError(path + ": row 1: file has no data rows");

  std::vector<InterventionSequence> seqs;
  seqs.reserve(order.size());
  for (const auto& id : order) {
    const auto& rows = by_intervention[id];
    InterventionSequence seq;
    seq.id = id;
    std::int64_t expect = 1;
    for (const auto& [idx, row] : rows) {
      if (idx != expect)
        throw UsageError(path + ": row " + std::to_string(row.line_no) + ": intervention " +
                         id + " has an index gap (expected " + std::to_string(expect) +
                         ", found " + std::to_string(idx) + ")");
      seq.activities.push_back(row.activity);
      ++expect;
    }
    seqs.push_back(std::move(seq));
  }
  return Dataset::from_sequences(std::filesystem::path(path).stem().string(),
                                 std::move(seqs));
}

void write_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + path);
  out << kHeader << '\n';
  for (const auto& seq : ds.sequences) {
    for (std::size_t i = 0; i < seq.activities.size(); ++i) {
      const Activity& a = seq.activities[i];
      out << seq.id << ',' << (i + 1) << ',' << format_element(a.left.verb) << ','
          << format_element(a.left.instrument) << ',' << format_element(a.left.structure)
          << ',' << format_element(a.right.verb) << ',' << format_element(a.right.instrument)
          << ',' << format_element(a.right.structure) << '\n';
    }
  }
}

}  // namespace actnext
