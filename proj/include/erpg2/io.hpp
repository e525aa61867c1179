#pragma once

#include "erpg2/quadruple.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace erpg2 {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Quadruple file: optional `name:`/`notes:` headers, then sections
// A1: (2x2), A:, B:, C: (4x4), entries surd literals or decimals,
// '#' comments, UTF-8. Exact iff every entry parses as a surd literal.
struct QuadrupleFileData {
  std::string name;
  std::string notes;
  std::array<std::vector<std::vector<std::string>>, 4> raw; // A1, A, B, C
  bool exact = true;
};

// Bracket file: lines `i j k value` meaning <mu(e_i,e_j),e_k>, i<j,
// no duplicate (i,j,k).
struct BracketFileData {
  struct Entry {
    int i, j, k;
    std::string value;
  };
  std::vector<Entry> entries;
  bool exact = true;
};

enum class InputKind { QuadrupleFile, BracketFile };

InputKind detect_input_kind(const std::string& text);
QuadrupleFileData parse_quadruple_text(const std::string& text);
BracketFileData parse_bracket_text(const std::string& text);

Quadruple<Exact> materialize_exact(const QuadrupleFileData& f);
Quadruple<double> materialize_float(const QuadrupleFileData& f);
Bracket<Exact> materialize_exact(const BracketFileData& f);
Bracket<double> materialize_float(const BracketFileData& f);

std::string print_quadruple_file(const Quadruple<Exact>& q, const std::string& name,
                                 const std::string& notes = "");
std::string print_quadruple_file(const Quadruple<double>& q, const std::string& name,
                                 const std::string& notes = "");

// Reads a path or a `catalog:NAME` URI.
std::string read_input_text(const std::string& path_or_uri);

// ---- catalog -------------------------------------------------------------

const std::vector<std::string>& catalog_names();
const std::string& catalog_text(const std::string& name); // throws on unknown name
Quadruple<Exact> catalog(const std::string& name);

// ---- stable-ordered key=value report --------------------------------------

class Report {
public:
  void add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
  void add(const std::string& key, bool pass) { add(key, pass ? std::string("pass") : std::string("fail")); }
  void add_flag(const std::string& key, bool value) { add(key, value ? std::string("true") : std::string("false")); }
  void add(const std::string& key, double v);
  void add(const std::string& key, const Exact& v) { add(key, v.str()); }
  void add(const std::string& key, int v) { add(key, std::to_string(v)); }
  bool all_checks_pass() const;
  void render(std::ostream& out) const;

private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

} // namespace erpg2
