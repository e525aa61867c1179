#include "erpg2/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace erpg2 {

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string drop_comment(const std::string& s) {
  size_t h = s.find('#');
  return h == std::string::npos ? s : s.substr(0, h);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

bool surd_parseable(const std::string& t) {
  try {
    parse_surd(t);
    return true;
  } catch (const ScalarError&) {
    return false;
  }
}

double parse_decimal(const std::string& t, int line) {
  try {
    size_t used = 0;
    double v = std::stod(t, &used);
    if (used != t.size()) throw ParseError(line, "bad numeric entry '" + t + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    throw ParseError(line, "bad numeric entry '" + t + "'");
  }
}

double entry_to_double(const std::string& t, int line) {
  if (surd_parseable(t)) return parse_surd(t).to_double();
  return parse_decimal(t, line);
}

} // namespace

InputKind detect_input_kind(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string s = strip(drop_comment(line));
    if (s.empty()) continue;
    if (s.rfind("A1:", 0) == 0 || s.rfind("name:", 0) == 0 || s.rfind("notes:", 0) == 0)
      return InputKind::QuadrupleFile;
    return InputKind::BracketFile;
  }
  return InputKind::BracketFile;
}

QuadrupleFileData parse_quadruple_text(const std::string& text) {
  QuadrupleFileData f;
  static const std::array<std::string, 4> section_names = {"A1", "A", "B", "C"};
  static const std::array<std::pair<int, int>, 4> shapes = {{{2, 2}, {4, 4}, {4, 4}, {4, 4}}};
  int section = -1;
  std::array<bool, 4> seen{};
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = strip(drop_comment(line));
    if (s.empty()) continue;
    if (s.rfind("name:", 0) == 0) {
      f.name = strip(s.substr(5));
      continue;
    }
    if (s.rfind("notes:", 0) == 0) {
      f.notes = strip(s.substr(6));
      continue;
    }
    bool header = false;
    for (int k = 0; k < 4; ++k)
      if (s == section_names[k] + ":") {
        if (seen[k]) throw ParseError(lineno, "duplicate section " + section_names[k]);
        seen[k] = true;
        section = k;
        header = true;
        break;
      }
    if (header) continue;
    if (section < 0) throw ParseError(lineno, "entry before any section header");
    auto ts = tokens(s);
    if (static_cast<int>(ts.size()) != shapes[section].second)
      throw ParseError(lineno, "expected " + std::to_string(shapes[section].second) +
                                   " entries in section " + section_names[section]);
    if (static_cast<int>(f.raw[section].size()) >= shapes[section].first)
      throw ParseError(lineno, "too many rows in section " + section_names[section]);
    for (const auto& t : ts) {
      if (!surd_parseable(t)) {
        parse_decimal(t, lineno); // throws when neither surd nor decimal
        f.exact = false;
      }
    }
    f.raw[section].push_back(ts);
  }
  for (int k = 0; k < 4; ++k) {
    if (!seen[k]) throw ParseError(lineno, "missing section " + section_names[k]);
    if (static_cast<int>(f.raw[k].size()) != shapes[k].first)
      throw ParseError(lineno, "section " + section_names[k] + " has wrong row count");
  }
  return f;
}

BracketFileData parse_bracket_text(const std::string& text) {
  BracketFileData f;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::tuple<int, int, int>, int> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = strip(drop_comment(line));
    if (s.empty()) continue;
    auto ts = tokens(s);
    if (ts.size() != 4) throw ParseError(lineno, "expected 'i j k value'");
    int ijk[3];
    for (int t = 0; t < 3; ++t) {
      auto [p, ec] = std::from_chars(ts[t].data(), ts[t].data() + ts[t].size(), ijk[t]);
      if (ec != std::errc() || p != ts[t].data() + ts[t].size())
        throw ParseError(lineno, "bad index '" + ts[t] + "'");
      if (ijk[t] < 1 || ijk[t] > 7) throw ParseError(lineno, "index out of range 1..7");
    }
    if (ijk[0] >= ijk[1]) throw ParseError(lineno, "need i < j");
    auto key = std::make_tuple(ijk[0], ijk[1], ijk[2]);
    if (seen.count(key)) throw ParseError(lineno, "duplicate (i,j,k) entry");
    seen[key] = lineno;
    if (!surd_parseable(ts[3])) {
      parse_decimal(ts[3], lineno);
      f.exact = false;
    }
    f.entries.push_back({ijk[0], ijk[1], ijk[2], ts[3]});
  }
  return f;
}

Quadruple<Exact> materialize_exact(const QuadrupleFileData& f) {
  if (!f.exact) throw ScalarError("file has non-surd entries; use the float backend");
  Quadruple<Exact> q;
  std::array<Matrix<Exact>*, 4> mats = {&q.A1, &q.A, &q.B, &q.C};
  for (int k = 0; k < 4; ++k)
    for (size_t i = 0; i < f.raw[k].size(); ++i)
      for (size_t j = 0; j < f.raw[k][i].size(); ++j)
        (*mats[k])(static_cast<int>(i), static_cast<int>(j)) = parse_surd(f.raw[k][i][j]);
  return q;
}

Quadruple<double> materialize_float(const QuadrupleFileData& f) {
  Quadruple<double> q;
  std::array<Matrix<double>*, 4> mats = {&q.A1, &q.A, &q.B, &q.C};
  for (int k = 0; k < 4; ++k)
    for (size_t i = 0; i < f.raw[k].size(); ++i)
      for (size_t j = 0; j < f.raw[k][i].size(); ++j)
        (*mats[k])(static_cast<int>(i), static_cast<int>(j)) = entry_to_double(f.raw[k][i][j], 0);
  return q;
}

Bracket<Exact> materialize_exact(const BracketFileData& f) {
  if (!f.exact) throw ScalarError("file has non-surd entries; use the float backend");
  Bracket<Exact> mu;
  for (const auto& e : f.entries) mu.set_c(e.i, e.j, e.k, parse_surd(e.value));
  return mu;
}

Bracket<double> materialize_float(const BracketFileData& f) {
  Bracket<double> mu;
  for (const auto& e : f.entries) mu.set_c(e.i, e.j, e.k, entry_to_double(e.value, 0));
  return mu;
}

namespace {

template <class S, class Fmt>
std::string print_quadruple_impl(const Quadruple<S>& q, const std::string& name,
                                 const std::string& notes, Fmt fmt) {
  std::ostringstream out;
  if (!name.empty()) out << "name: " << name << "\n";
  if (!notes.empty()) out << "notes: " << notes << "\n";
  std::array<const Matrix<S>*, 4> mats = {&q.A1, &q.A, &q.B, &q.C};
  static const std::array<std::string, 4> section_names = {"A1", "A", "B", "C"};
  for (int k = 0; k < 4; ++k) {
    out << section_names[k] << ":\n";
    for (int i = 0; i < mats[k]->rows(); ++i) {
      for (int j = 0; j < mats[k]->cols(); ++j) out << (j ? " " : "") << fmt((*mats[k])(i, j));
      out << "\n";
    }
  }
  return out.str();
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::string print_quadruple_file(const Quadruple<Exact>& q, const std::string& name,
                                 const std::string& notes) {
  return print_quadruple_impl(q, name, notes, [](const Exact& v) { return v.str(); });
}
std::string print_quadruple_file(const Quadruple<double>& q, const std::string& name,
                                 const std::string& notes) {
  return print_quadruple_impl(q, name, notes, fmt_double);
}

std::string read_input_text(const std::string& path_or_uri) {
  if (path_or_uri.rfind("catalog:", 0) == 0) return catalog_text(path_or_uri.substr(8));
  std::ifstream in(path_or_uri, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path_or_uri);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Report::add(const std::string& key, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  lines_.emplace_back(key, buf);
}

bool Report::all_checks_pass() const {
  for (const auto& [k, v] : lines_)
    if (v == "fail") return false;
  return true;
}

void Report::render(std::ostream& out) const {
  for (const auto& [k, v] : lines_) out << k << "=" << v << "\n";
}

} // namespace erpg2
