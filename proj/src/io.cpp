#include "auxetica/io.hpp"

#include <fmt/format.h>
#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace auxetica {

namespace {

using json = nlohmann::json;

// Input iterator that publishes how many bytes the parser has consumed, so
// SAX events can be tied to a position in the text.
struct CountingIterator {
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* p = nullptr;
  const char* base = nullptr;
  std::size_t* consumed = nullptr;

  reference operator*() const { return *p; }
  CountingIterator& operator++() {
    ++p;
    if (consumed) *consumed = static_cast<std::size_t>(p - base);
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator old = *this;
    ++*this;
    return old;
  }
  bool operator==(const CountingIterator& o) const { return p == o.p; }
  bool operator!=(const CountingIterator& o) const { return p != o.p; }
};

struct Located {
  json root;
  std::map<std::string, std::size_t> offsets;  // JSON pointer -> byte offset
};

// Builds the document and records where every value starts.
class LocatingSax {
 public:
  LocatingSax(Located& out, const std::size_t& consumed) : out_(out), consumed_(consumed) {}

  bool null() { return place(json(nullptr)); }
  bool boolean(bool b) { return place(json(b)); }
  bool number_integer(json::number_integer_t v) { return place(json(v)); }
  bool number_unsigned(json::number_unsigned_t v) { return place(json(v)); }
  bool number_float(json::number_float_t v, const std::string&) { return place(json(v)); }
  bool string(std::string& s) { return place(json(s)); }
  bool binary(json::binary_t& b) { return place(json(b)); }

  bool start_object(std::size_t) { return open(json::object()); }
  bool start_array(std::size_t) { return open(json::array()); }
  bool end_object() { return close(); }
  bool end_array() { return close(); }

  bool key(std::string& k) {
    stack_.back().key = k;
    return true;
  }

  bool parse_error(std::size_t position, const std::string& last_token, const nlohmann::detail::exception& ex) {
    error_position = position;
    error_message = fmt::format("syntax error near '{}': {}", last_token, ex.what());
    return false;
  }

  std::size_t error_position = 0;
  std::string error_message;

 private:
  struct Frame {
    json* node;
    std::string pointer;
    std::string key;
    std::size_t next_index = 0;
  };

  static std::string escape_token(const std::string& k) {
    std::string out;
    for (char c : k) {
      if (c == '~')
        out += "~0";
      else if (c == '/')
        out += "~1";
      else
        out += c;
    }
    return out;
  }

  std::pair<json*, std::string> insert(json v) {
    const std::size_t at = consumed_ > 0 ? consumed_ - 1 : 0;
    if (stack_.empty()) {
      out_.root = std::move(v);
      out_.offsets[""] = at;
      return {&out_.root, ""};
    }
    Frame& top = stack_.back();
    std::string ptr;
    json* slot;
    if (top.node->is_array()) {
      ptr = top.pointer + "/" + std::to_string(top.next_index++);
      top.node->push_back(std::move(v));
      slot = &top.node->back();
    } else {
      ptr = top.pointer + "/" + escape_token(top.key);
      slot = &(*top.node)[top.key];
      *slot = std::move(v);
    }
    out_.offsets[ptr] = at;
    return {slot, ptr};
  }

  bool place(json v) {
    insert(std::move(v));
    return true;
  }

  bool open(json v) {
    auto [slot, ptr] = insert(std::move(v));
    stack_.push_back({slot, ptr, {}, 0});
    return true;
  }

  bool close() {
    stack_.pop_back();
    return true;
  }

  Located& out_;
  const std::size_t& consumed_;
  std::vector<Frame> stack_;
};

std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  int line = 1, column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Located parse_located(const std::string& text) {
  Located out;
  std::size_t consumed = 0;
  LocatingSax sax(out, consumed);
  CountingIterator first{text.data(), text.data(), &consumed};
  CountingIterator last{text.data() + text.size(), text.data(), nullptr};
  if (!json::sax_parse(first, last, &sax)) {
    const auto [line, column] = line_column(text, sax.error_position > 0 ? sax.error_position - 1 : 0);
    throw ParseError(sax.error_message, line, column);
  }
  return out;
}

class Reader {
 public:
  Reader(const std::string& text, const Located& doc, const LoadOptions& options, std::vector<std::string>* warnings)
      : text_(text), doc_(doc), options_(options), warnings_(warnings) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& message) const {
    auto it = doc_.offsets.find(ptr);
    const std::size_t at = it == doc_.offsets.end() ? 0 : it->second;
    const auto [line, column] = line_column(text_, at);
    throw ParseError(ptr.empty() ? message : ptr + ": " + message, line, column);
  }

  void check_keys(const json& obj, const std::string& ptr, const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : obj.items()) {
      if (allowed.count(k)) continue;
      const std::string where = ptr + "/" + k;
      if (options_.strict) fail(where, "unknown field '" + k + "'");
      if (warnings_) warnings_->push_back(fmt::format("ignoring unknown field '{}' at {}", k, where));
    }
  }

  const json& field(const json& obj, const std::string& ptr, const std::string& key) const {
    if (!obj.is_object()) fail(ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(ptr, "missing field '" + key + "'");
    return *it;
  }

  long long integer(const json& v, const std::string& ptr) const {
    if (!v.is_number_integer()) fail(ptr, "expected an integer");
    return v.get<long long>();
  }

  double number(const json& v, const std::string& ptr) const {
    if (!v.is_number()) fail(ptr, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(ptr, "number is not finite");
    return x;
  }

  const json& array(const json& v, const std::string& ptr, std::optional<std::size_t> size = std::nullopt) const {
    if (!v.is_array()) fail(ptr, "expected an array");
    if (size && v.size() != *size) fail(ptr, fmt::format("expected {} entries, found {}", *size, v.size()));
    return v;
  }

  Eigen::VectorXd real_vector(const json& v, const std::string& ptr, int d) const {
    array(v, ptr, d);
    Eigen::VectorXd out(d);
    for (int i = 0; i < d; ++i) out(i) = number(v[i], ptr + "/" + std::to_string(i));
    return out;
  }

  IntVector int_vector(const json& v, const std::string& ptr, int d) const {
    array(v, ptr, d);
    IntVector out(d);
    for (int i = 0; i < d; ++i) {
      const long long x = integer(v[i], ptr + "/" + std::to_string(i));
      if (x < -1000000 || x > 1000000) fail(ptr + "/" + std::to_string(i), "period entry out of range");
      out(i) = static_cast<int>(x);
    }
    return out;
  }

  // d x d matrix given as a list of d lists; `columns` selects whether the
  // inner lists are columns or rows.
  Eigen::MatrixXd matrix(const json& v, const std::string& ptr, int d, bool columns) const {
    array(v, ptr, d);
    Eigen::MatrixXd out(d, d);
    for (int i = 0; i < d; ++i) {
      const Eigen::VectorXd line = real_vector(v[i], ptr + "/" + std::to_string(i), d);
      if (columns)
        out.col(i) = line;
      else
        out.row(i) = line.transpose();
    }
    return out;
  }

  void version(const json& obj, const std::string& ptr) const {
    const std::string vp = ptr + "/format_version";
    const long long v = integer(field(obj, ptr, "format_version"), vp);
    if (v != kFormatVersion) {
      const auto [line, column] = line_column(text_, doc_.offsets.count(vp) ? doc_.offsets.at(vp) : 0);
      throw VersionMismatch(fmt::format("unsupported format_version {} (expected {}) at line {}, column {}", v,
                                        kFormatVersion, line, column));
    }
  }

  FrameworkFile framework(const json& obj, const std::string& ptr) const {
    if (!obj.is_object()) fail(ptr, "expected an object");
    check_keys(obj, ptr, {"format_version", "dim", "vertices", "lattice", "edges", "metadata"});
    version(obj, ptr);
    const long long dim = integer(field(obj, ptr, "dim"), ptr + "/dim");
    if (dim < 1 || dim > 16) fail(ptr + "/dim", "dimension must be between 1 and 16");
    const int d = static_cast<int>(dim);

    const std::string vp = ptr + "/vertices";
    const json& vertices = array(field(obj, ptr, "vertices"), vp);
    const int n = static_cast<int>(vertices.size());
    Eigen::MatrixXd positions(d, n);
    std::vector<bool> seen(n, false);
    for (int k = 0; k < n; ++k) {
      const std::string p = vp + "/" + std::to_string(k);
      const json& vx = vertices[k];
      if (!vx.is_object()) fail(p, "expected an object");
      check_keys(vx, p, {"id", "position"});
      const long long id = integer(field(vx, p, "id"), p + "/id");
      if (id < 0 || id >= n) fail(p + "/id", fmt::format("vertex id {} out of range for {} vertices", id, n));
      if (seen[id]) fail(p + "/id", fmt::format("duplicate vertex id {}", id));
      seen[id] = true;
      positions.col(id) = real_vector(field(vx, p, "position"), p + "/position", d);
    }

    const LinearMapd lattice = matrix(field(obj, ptr, "lattice"), ptr + "/lattice", d, true);

    const std::string ep = ptr + "/edges";
    const json& edges = array(field(obj, ptr, "edges"), ep);
    std::vector<EdgeOrbit> orbits;
    std::vector<std::optional<double>> lengths;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string p = ep + "/" + std::to_string(k);
      const json& e = edges[k];
      if (!e.is_object()) fail(p, "expected an object");
      check_keys(e, p, {"u", "v", "gamma", "length"});
      EdgeOrbit orbit;
      for (const char* end : {"u", "v"}) {
        const long long id = integer(field(e, p, end), p + "/" + end);
        if (id < 0 || id >= n)
          fail(p, fmt::format("edge {} references vertex id {} of {}", k, id, n));
        (end[0] == 'u' ? orbit.u : orbit.v) = static_cast<int>(id);
      }
      orbit.gamma = int_vector(field(e, p, "gamma"), p + "/gamma", d);
      orbits.push_back(orbit);
      if (e.contains("length"))
        lengths.push_back(number(e["length"], p + "/length"));
      else
        lengths.emplace_back();
    }

    FrameworkFile out;
    if (obj.contains("metadata")) {
      const std::string mp = ptr + "/metadata";
      const json& meta = obj["metadata"];
      if (!meta.is_object()) fail(mp, "expected an object of strings");
      for (const auto& [k, v] : meta.items()) {
        if (!v.is_string()) fail(mp + "/" + k, "metadata values must be strings");
        out.metadata[k] = v.get<std::string>();
      }
    }

    PeriodicFramework f = make_framework(lattice, positions, {});
    f.graph.edges = orbits;
    for (std::size_t k = 0; k < orbits.size(); ++k) {
      f.graph.edges[k].length = lengths[k] ? *lengths[k] : f.edge_vector(static_cast<int>(k)).norm();
    }
    require_valid(f);
    out.framework = std::move(f);
    return out;
  }

 private:
  const std::string& text_;
  const Located& doc_;
  const LoadOptions& options_;
  std::vector<std::string>* warnings_;
};

std::string num(double x) {
  if (!std::isfinite(x)) throw InvalidInput("cannot serialize a non-finite number");
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  return fmt::format("{:.17g}", x);
}

std::string quoted(const std::string& s) { return json(s).dump(); }

template <typename Vec>
std::string num_list(const Vec& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += num(static_cast<double>(v(i)));
  }
  return out + "]";
}

std::string int_list(const IntVector& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v(i));
  }
  return out + "]";
}

std::string columns_list(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (j) out += ", ";
    out += num_list(Eigen::VectorXd(m.col(j)));
  }
  return out + "]";
}

std::string rows_list(const Eigen::MatrixXd& m) { return columns_list(m.transpose()); }

// Framework object at the given indentation (the opening brace is not
// indented).
std::string framework_object(const FrameworkFile& file, const std::string& indent) {
  const PeriodicFramework& f = file.framework;
  const std::string in1 = indent + "  ";
  const std::string in2 = indent + "    ";
  std::string out = "{\n";
  out += in1 + fmt::format("\"format_version\": {},\n", kFormatVersion);
  out += in1 + fmt::format("\"dim\": {},\n", f.dim());
  out += in1 + "\"vertices\": [";
  for (int v = 0; v < f.n(); ++v) {
    out += v ? ",\n" : "\n";
    out += in2 + fmt::format("{{\"id\": {}, \"position\": {}}}", v, num_list(Eigen::VectorXd(f.positions.col(v))));
  }
  out += f.n() ? "\n" + in1 + "],\n" : "],\n";
  out += in1 + "\"lattice\": " + columns_list(f.lattice) + ",\n";
  out += in1 + "\"edges\": [";
  for (int k = 0; k < f.m(); ++k) {
    const EdgeOrbit& e = f.graph.edges[k];
    out += k ? ",\n" : "\n";
    out += in2 + fmt::format("{{\"u\": {}, \"v\": {}, \"gamma\": {}, \"length\": {}}}", e.u, e.v, int_list(e.gamma),
                             num(e.length));
  }
  out += f.m() ? "\n" + in1 + "],\n" : "],\n";
  out += in1 + "\"metadata\": {";
  bool first = true;
  for (const auto& [k, v] : file.metadata) {
    out += first ? "\n" : ",\n";
    first = false;
    out += in2 + quoted(k) + ": " + quoted(v);
  }
  out += file.metadata.empty() ? "}\n" : "\n" + in1 + "}\n";
  out += indent + "}";
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, int line, int column) {
  double x = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || ptr != e) throw ParseError("invalid number '" + s + "'", line, column);
  return x;
}

std::string fixed(double x) {
  std::string s = fmt::format("{:.12f}", x);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

}  // namespace

FrameworkFile parse_framework(const std::string& text, const LoadOptions& options, std::vector<std::string>* warnings) {
  const Located doc = parse_located(text);
  Reader reader(text, doc, options, warnings);
  return reader.framework(doc.root, "");
}

std::string format_framework(const FrameworkFile& file) { return framework_object(file, "") + "\n"; }

std::string format_framework(const PeriodicFramework& f) { return format_framework(FrameworkFile{f, {}}); }

DeformationPath parse_path(const std::string& text, const LoadOptions& options, std::vector<std::string>* warnings) {
  const Located doc = parse_located(text);
  Reader reader(text, doc, options, warnings);
  const json& root = doc.root;
  if (!root.is_object()) reader.fail("", "expected an object");
  reader.check_keys(root, "", {"format_version", "framework", "samples"});
  reader.version(root, "");
  DeformationPath p;
  p.framework0 = reader.framework(reader.field(root, "", "framework"), "/framework").framework;
  const int d = p.framework0.dim();
  const int n = p.framework0.n();
  const json& samples = reader.array(reader.field(root, "", "samples"), "/samples");
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const std::string sp = "/samples/" + std::to_string(k);
    const json& s = samples[k];
    if (!s.is_object()) reader.fail(sp, "expected an object");
    reader.check_keys(s, sp, {"tau", "positions", "lattice", "gram_velocity"});
    PathSample sample;
    sample.tau = reader.number(reader.field(s, sp, "tau"), sp + "/tau");
    const json& pos = reader.array(reader.field(s, sp, "positions"), sp + "/positions", n);
    sample.positions.resize(d, n);
    for (int v = 0; v < n; ++v)
      sample.positions.col(v) = reader.real_vector(pos[v], sp + "/positions/" + std::to_string(v), d);
    sample.lattice = reader.matrix(reader.field(s, sp, "lattice"), sp + "/lattice", d, true);
    if (s.contains("gram_velocity")) {
      const Eigen::MatrixXd g = reader.matrix(s["gram_velocity"], sp + "/gram_velocity", d, false);
      if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
        reader.fail(sp + "/gram_velocity", "matrix is not symmetric");
      sample.gram_velocity = SymMatrixd::symmetrized(g);
    }
    p.samples.push_back(std::move(sample));
  }
  require_valid_path(p);
  return p;
}

std::string format_path(const DeformationPath& p) {
  std::string out = "{\n";
  out += fmt::format("  \"format_version\": {},\n", kFormatVersion);
  out += "  \"framework\": " + framework_object(FrameworkFile{p.framework0, {}}, "  ") + ",\n";
  out += "  \"samples\": [";
  for (std::size_t k = 0; k < p.samples.size(); ++k) {
    const PathSample& s = p.samples[k];
    out += k ? ",\n" : "\n";
    out += fmt::format("    {{\"tau\": {}, \"positions\": {}, \"lattice\": {}", num(s.tau), columns_list(s.positions),
                       columns_list(s.lattice));
    if (s.gram_velocity) out += ", \"gram_velocity\": " + rows_list(s.gram_velocity->dense());
    out += "}";
  }
  out += p.samples.empty() ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidInput("failed writing '" + path + "'");
}

FrameworkFile load_framework(const std::string& path, const LoadOptions& options, std::vector<std::string>* warnings) {
  return parse_framework(read_text_file(path), options, warnings);
}

void save_framework(const std::string& path, const FrameworkFile& file) { write_text_file(path, format_framework(file)); }

DeformationPath load_path(const std::string& path, const LoadOptions& options, std::vector<std::string>* warnings) {
  return parse_path(read_text_file(path), options, warnings);
}

void save_path(const std::string& path, const DeformationPath& p) { write_text_file(path, format_path(p)); }

std::vector<GramTraceRow> gram_trace(const DeformationPath& p) {
  require_valid_path(p);
  const std::vector<SymMatrixd> omegas = gram_curve(p);
  const std::vector<SymMatrixd> vel = gram_velocities(p);
  std::vector<GramTraceRow> rows;
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    rows.push_back({p.samples[k].tau, omegas[k], omegas[k].dense().determinant(), min_eigenvalue(vel[k])});
  }
  return rows;
}

std::string format_gram_trace_csv(const std::vector<GramTraceRow>& rows) {
  const int d = rows.empty() ? 0 : rows.front().omega.dim();
  std::string out = "tau";
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) out += fmt::format(",w{}{}", i + 1, j + 1);
  out += ",det,min_eig_dw\n";
  for (const auto& r : rows) {
    if (r.omega.dim() != d) throw DimensionError("gram trace rows of different dimension");
    out += fixed(r.tau);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) out += "," + fixed(r.omega(i, j));
    out += "," + fixed(r.det) + "," + fixed(r.min_eig_velocity) + "\n";
  }
  return out;
}

std::vector<GramTraceRow> parse_gram_trace_csv(const std::string& text) {
  std::vector<std::string> lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty gram trace", 1, 1);
  const std::vector<std::string> header = split(lines[0], ',');
  const int cols = static_cast<int>(header.size());
  int d = 0;
  while ((d + 1) * (d + 2) / 2 + 3 <= cols) ++d;
  if (d < 1 || d * (d + 1) / 2 + 3 != cols || header.front() != "tau" || header[cols - 2] != "det" ||
      header.back() != "min_eig_dw")
    throw ParseError("unexpected gram trace header", 1, 1);
  std::vector<GramTraceRow> rows;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const int line = static_cast<int>(l) + 1;
    const std::vector<std::string> cells = split(lines[l], ',');
    if (static_cast<int>(cells.size()) != cols)
      throw ParseError(fmt::format("expected {} columns, found {}", cols, cells.size()), line, 1);
    std::vector<double> x;
    int column = 1;
    for (const auto& c : cells) {
      x.push_back(parse_double(c, line, column));
      column += static_cast<int>(c.size()) + 1;
    }
    GramTraceRow r;
    r.tau = x[0];
    r.omega = SymMatrixd(d);
    int k = 1;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) r.omega(i, j) = x[k++];
    r.det = x[k++];
    r.min_eig_velocity = x[k];
    rows.push_back(std::move(r));
  }
  return rows;
}

PsdCheck check_trace_psd(const std::vector<GramTraceRow>& rows, double tol) {
  if (tol < 0) throw InvalidInput("check_trace_psd: negative tolerance");
  PsdCheck out;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  bool boundary = false;
  for (const auto& r : rows) {
    out.min_eigenvalue = std::min(out.min_eigenvalue, r.min_eig_velocity);
    if (r.min_eig_velocity < -tol) {
      out.verdict = PathVerdict::NotAuxetic;
      out.tau_star = r.tau;
      return out;
    }
    if (r.min_eig_velocity <= tol) boundary = true;
  }
  out.verdict = boundary ? PathVerdict::BoundaryAuxetic : PathVerdict::Auxetic;
  return out;
}

}  // namespace auxetica
