#include "ddcech/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "ddcech/errors.hpp"

namespace ddcech {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Non-blank, non-comment lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(no, std::string(t));
  }
  return out;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

Index parse_index(std::string_view text, std::size_t line) {
  Index v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size()) {
    throw ParseError(line, "expected a vertex index, got '" + std::string(text) + "'");
  }
  return v;
}

std::string expect_keyword(const std::pair<std::size_t, std::string>& line, const std::string& key) {
  auto w = words(line.second);
  if (w.empty() || w.front() != key) {
    throw ParseError(line.first, "expected '" + key + "'");
  }
  return line.second.substr(key.size());
}

std::string grade_text(const Step& s) {
  return format_number(s.r) + " " + format_number(s.m == 0.0 ? 0.0 : -s.m);
}

}  // namespace

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, p);
}

double parse_number(std::string_view text, std::size_t line) {
  text = trim(text);
  double v = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || p != text.data() + text.size() || std::isnan(v)) {
    throw ParseError(line, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) out.push_back(parse_number(item, 1));
  return out;
}

Dataset read_dataset(std::istream& in, InputKind kind, const std::optional<std::string>& weight_column) {
  auto lines = content_lines(in);
  if (lines.empty()) throw ParseError(1, "missing header row");
  const std::size_t header_line = lines.front().first;
  const std::vector<std::string> header = split(lines.front().second, ',');
  std::optional<std::size_t> wcol;
  if (weight_column) {
    wcol = find_column(header, *weight_column);
    if (!wcol) {
      throw ParseError(header_line, "weight column '" + *weight_column + "' not found in header");
    }
  } else {
    wcol = find_column(header, "w");
  }
  const auto lcol = find_column(header, "label");

  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split(lines[i].second, ',');
    if (cells.size() != header.size()) {
      throw ParseError(lines[i].first, "expected " + std::to_string(header.size()) +
                                           " fields, found " + std::to_string(cells.size()));
    }
    rows.push_back(std::move(cells));
    row_lines.push_back(lines[i].first);
  }
  const std::size_t n = rows.size();

  std::vector<double> weights(n, 1.0);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    if (wcol) weights[i] = parse_number(rows[i][*wcol], row_lines[i]);
    if (lcol) labels.push_back(rows[i][*lcol]);
  }

  Dataset out;
  if (kind == InputKind::kPoints) {
    const auto xcol = find_column(header, "x");
    if (!xcol) throw ParseError(header_line, "points input needs an 'x' column");
    const auto ycol = find_column(header, "y");
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back({parse_number(rows[i][*xcol], row_lines[i]),
                     ycol ? parse_number(rows[i][*ycol], row_lines[i]) : 0.0});
    }
    out.space = FiniteMetricSpace::from_points(std::move(pts), std::move(labels));
  } else {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if ((wcol && c == *wcol) || (lcol && c == *lcol)) continue;
      cols.push_back(c);
    }
    if (cols.size() != n) {
      throw ParseError(header_line, "matrix input has " + std::to_string(cols.size()) +
                                        " distance columns but " + std::to_string(n) + " rows");
    }
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = parse_number(rows[i][cols[j]], row_lines[i]);
    }
    out.space = FiniteMetricSpace::from_matrix(d, std::nullopt, std::move(labels));
  }
  out.measure = DiscreteMeasure(std::move(weights));
  return out;
}

Dataset read_dataset_file(const std::filesystem::path& path, InputKind kind,
                          const std::optional<std::string>& weight_column) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_dataset(in, kind, weight_column);
}

void write_bifiltration(std::ostream& out, const BifilteredComplex& k) {
  out << "ddcech-bifiltration 1\n";
  out << "dim_cap " << k.dim_cap() << "\n";
  out << "universe";
  for (Index v : k.universe()) out << ' ' << v;
  out << "\nsimplices " << k.size() << "\n";
  for (const auto& [s, st] : k.entries()) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << " |";
    for (std::size_t i = 0; i < st.steps().size(); ++i) {
      out << (i ? " ; " : " ") << format_number(st.steps()[i].r) << ' '
          << format_number(st.steps()[i].m);
    }
    out << "\n";
  }
}

BifilteredComplex read_bifiltration(std::istream& in) {
  auto lines = content_lines(in);
  if (lines.size() < 4 || lines[0].second != "ddcech-bifiltration 1") {
    throw ParseError(lines.empty() ? 1 : lines[0].first, "not a ddcech-bifiltration 1 file");
  }
  auto cap_words = words(expect_keyword(lines[1], "dim_cap"));
  if (cap_words.size() != 1) throw ParseError(lines[1].first, "dim_cap takes one value");
  const std::size_t dim_cap = parse_index(cap_words[0], lines[1].first);
  PointSet universe;
  for (const std::string& w : words(expect_keyword(lines[2], "universe"))) {
    universe.push_back(parse_index(w, lines[2].first));
  }
  auto count_words = words(expect_keyword(lines[3], "simplices"));
  if (count_words.size() != 1) throw ParseError(lines[3].first, "simplices takes one value");
  const std::size_t count = parse_index(count_words[0], lines[3].first);
  if (lines.size() - 4 != count) {
    throw ParseError(lines.back().first, "expected " + std::to_string(count) +
                                             " simplex lines, found " +
                                             std::to_string(lines.size() - 4));
  }
  std::map<Simplex, Staircase> entries;
  for (std::size_t i = 4; i < lines.size(); ++i) {
    const auto& [no, text] = lines[i];
    const std::size_t bar = text.find('|');
    if (bar == std::string::npos) throw ParseError(no, "missing '|' after the vertices");
    std::vector<Index> verts;
    for (const std::string& w : words(std::string_view(text).substr(0, bar))) {
      verts.push_back(parse_index(w, no));
    }
    std::vector<Step> steps;
    const std::string_view rest = trim(std::string_view(text).substr(bar + 1));
    if (!rest.empty()) {
      for (const std::string& part : split(rest, ';')) {
        auto pair = words(part);
        if (pair.size() != 2) throw ParseError(no, "each step is '<r> <m>'");
        steps.push_back({parse_number(pair[0], no), parse_number(pair[1], no)});
      }
    }
    try {
      Simplex s(std::move(verts));
      if (!entries.emplace(s, Staircase(std::move(steps))).second) {
        throw ParseError(no, "simplex " + s.to_string() + " listed twice");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(no, e.what());
    }
  }
  try {
    BifilteredComplex k(std::move(universe), dim_cap, std::move(entries));
    k.validate();
    return k;
  } catch (const Error& e) {
    throw ParseError(lines[2].first, e.what());
  }
}

void write_hilbert_csv(std::ostream& out, const BettiTable& t) {
  out << "m,r";
  for (std::size_t d = 0; d <= t.max_degree; ++d) out << ",b" << d;
  out << "\n";
  for (std::size_t i = 0; i < t.m_grid.size(); ++i) {
    for (std::size_t j = 0; j < t.r_grid.size(); ++j) {
      out << format_number(t.m_grid[i]) << ',' << format_number(t.r_grid[j]);
      for (std::size_t b : t.at(i, j)) out << ',' << b;
      out << "\n";
    }
  }
}

namespace {

// 0 is white; larger values get darker blue, linearly up to vmax.
std::string cell_color(std::size_t v, std::size_t vmax) {
  const double t = vmax == 0 ? 0.0 : static_cast<double>(v) / static_cast<double>(vmax);
  const int r = static_cast<int>(std::lround(255 - 225 * t));
  const int g = static_cast<int>(std::lround(255 - 175 * t));
  const int b = static_cast<int>(std::lround(255 - 55 * t));
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

void write_hilbert_svg(std::ostream& out, const BettiTable& t, std::size_t degree) {
  if (degree > t.max_degree) throw UnsupportedDimension("degree above the table's max degree");
  constexpr int cell = 28, left = 80, top = 40, bottom = 80, legend = 120;
  const int cols = static_cast<int>(t.r_grid.size()), rows = static_cast<int>(t.m_grid.size());
  std::size_t vmax = 0;
  for (const auto& row : t.cells) {
    for (const auto& v : row) vmax = std::max(vmax, v[degree]);
  }
  const int width = left + cols * cell + legend, height = top + rows * cell + bottom;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"monospace\" font-size=\"10\">\n";
  out << "<text x=\"" << left << "\" y=\"20\" font-size=\"14\">betti " << degree << "</text>\n";
  for (int i = 0; i < rows; ++i) {
    const int y = top + (rows - 1 - i) * cell;  // m grows upward
    out << "<text x=\"" << left - 4 << "\" y=\"" << y + cell / 2 + 4
        << "\" text-anchor=\"end\">" << format_number(t.m_grid[static_cast<std::size_t>(i)])
        << "</text>\n";
    for (int j = 0; j < cols; ++j) {
      const std::size_t v =
          t.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j))[degree];
      const int x = left + j * cell;
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"" << cell_color(v, vmax) << "\" stroke=\"#999999\"/>\n";
      out << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
          << "\" text-anchor=\"middle\">" << v << "</text>\n";
    }
  }
  for (int j = 0; j < cols; ++j) {
    const int x = left + j * cell + cell / 2, y = top + rows * cell + 8;
    out << "<text x=\"" << x << "\" y=\"" << y << "\" transform=\"rotate(60 " << x << ' ' << y
        << ")\">" << format_number(t.r_grid[static_cast<std::size_t>(j)]) << "</text>\n";
  }
  out << "<text x=\"" << left + cols * cell / 2 << "\" y=\"" << height - 6
      << "\" text-anchor=\"middle\">r</text>\n";
  out << "<text x=\"12\" y=\"" << top + rows * cell / 2 << "\">m</text>\n";
  const int lx = left + cols * cell + 20;
  for (std::size_t v = 0; v <= vmax; ++v) {
    const int y = top + static_cast<int>(v) * 18;
    out << "<rect x=\"" << lx << "\" y=\"" << y << "\" width=\"14\" height=\"14\" fill=\""
        << cell_color(v, vmax) << "\" stroke=\"#999999\"/>\n";
    out << "<text x=\"" << lx + 20 << "\" y=\"" << y + 11 << "\">" << v << "</text>\n";
  }
  out << "</svg>\n";
}

void write_barcode(std::ostream& out, const Barcode& b) {
  for (std::size_t k = 0; k < b.by_degree.size(); ++k) {
    out << 'H' << k << ':';
    for (const Interval& iv : b.by_degree[k]) {
      out << " [" << format_number(iv.birth) << ',' << format_number(iv.death) << ')';
    }
    out << "\n";
  }
}

void write_firep(std::ostream& out, const BifilteredComplex& complex, std::size_t degree) {
  if (degree + 1 > complex.dim_cap()) {
    throw UnsupportedDimension("degree " + std::to_string(degree) + " needs simplices of dimension " +
                               std::to_string(degree + 1) + ", above dim_cap " +
                               std::to_string(complex.dim_cap()));
  }
  // Generators of dimension d: (simplex, step) in simplex order, then by r.
  struct Gen {
    const Simplex* s;
    Step step;
  };
  auto generators = [&](std::size_t d) {
    std::vector<Gen> g;
    for (const auto& [s, st] : complex.entries()) {
      if (s.dim() != d) continue;
      for (const Step& step : st.steps()) g.push_back({&s, step});
    }
    return g;
  };
  // First generator index of each simplex of dimension d.
  auto offsets = [&](std::size_t d) {
    std::map<Simplex, std::size_t> first;
    std::size_t n = 0;
    for (const auto& [s, st] : complex.entries()) {
      if (s.dim() != d) continue;
      first.emplace(s, n);
      n += st.steps().size();
    }
    return first;
  };
  auto boundary = [&](const Gen& g, const std::map<Simplex, std::size_t>& first) {
    std::vector<std::size_t> rows;
    for (const Simplex& f : g.s->facets()) {
      const Staircase* st = complex.staircase(f);
      auto it = first.find(f);
      if (!st || it == first.end()) {
        throw NotDownwardClosed("facet " + f.to_string() + " of " + g.s->to_string() + " is missing");
      }
      // The latest step of the facet at or before this grade.
      std::size_t pick = st->steps().size();
      for (std::size_t i = 0; i < st->steps().size(); ++i) {
        if (st->steps()[i].r <= g.step.r) pick = i;
      }
      if (pick == st->steps().size() || st->steps()[pick].m < g.step.m) {
        throw NotDownwardClosed("facet " + f.to_string() + " enters after " + g.s->to_string());
      }
      rows.push_back(it->second + pick);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  const auto high = generators(degree + 1);
  const auto mid = generators(degree);
  const std::size_t low_count = degree == 0 ? 0 : generators(degree - 1).size();
  const auto mid_first = offsets(degree);
  const auto low_first = degree == 0 ? std::map<Simplex, std::size_t>{} : offsets(degree - 1);

  out << "# ddcech firep, homology degree " << degree << "\n";
  out << "# grades are (r, -m), one generator per minimal grade of each simplex\n";
  out << "firep\nr\n-m\n";
  out << high.size() << ' ' << mid.size() << ' ' << low_count << "\n";
  for (const Gen& g : high) {
    out << grade_text(g.step) << " ;";
    for (std::size_t row : boundary(g, mid_first)) out << ' ' << row;
    out << "\n";
  }
  for (const Gen& g : mid) {
    out << grade_text(g.step) << " ;";
    if (degree > 0) {
      for (std::size_t row : boundary(g, low_first)) out << ' ' << row;
    }
    out << "\n";
  }
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ddcech
