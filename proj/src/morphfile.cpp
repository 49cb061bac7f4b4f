#include "cdiff/morphfile.hpp"

#include <cctype>
#include <vector>

#include "cdiff/error.hpp"

namespace cdiff {

namespace {

struct Line {
  std::string_view content;
  std::size_t offset;  // into the original buffer, for error positions
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.remove_suffix(1);
    std::size_t indent = 0;
    while (indent < line.size() &&
           std::isspace(static_cast<unsigned char>(line[indent])))
      ++indent;
    line.remove_prefix(indent);
    if (!line.empty()) out.push_back({line, start + indent});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::pair<std::string_view, std::string_view> keyword_rest(std::string_view line) {
  std::size_t sp = 0;
  while (sp < line.size() && !std::isspace(static_cast<unsigned char>(line[sp])))
    ++sp;
  std::string_view kw = line.substr(0, sp);
  while (sp < line.size() && std::isspace(static_cast<unsigned char>(line[sp])))
    ++sp;
  return {kw, line.substr(sp)};
}

int parse_nonneg(std::string_view s, std::size_t offset, const char* what) {
  if (s.empty()) throw ParseError(std::string("expected ") + what, offset);
  long v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(std::string("malformed ") + what, offset);
    v = v * 10 + (c - '0');
    if (v > 1'000'000) throw ParseError(std::string(what) + " too large", offset);
  }
  return static_cast<int>(v);
}

}  // namespace

MorphFile parse_morph_file(std::string_view text, bool nat_semiring) {
  std::optional<int> dom, cod;
  std::optional<Flavor> flavor;
  std::optional<std::pair<int, int>> split;
  std::vector<Expr> exprs;
  std::vector<std::pair<std::string_view, std::size_t>> expr_lines;

  for (const Line& line : split_lines(text)) {
    auto [kw, rest] = keyword_rest(line.content);
    if (kw == "dom") {
      if (dom) throw ParseError("duplicate 'dom'", line.offset);
      dom = parse_nonneg(rest, line.offset, "dom dimension");
    } else if (kw == "cod") {
      if (cod) throw ParseError("duplicate 'cod'", line.offset);
      cod = parse_nonneg(rest, line.offset, "cod dimension");
    } else if (kw == "scalar") {
      if (flavor) throw ParseError("duplicate 'scalar'", line.offset);
      if (rest == "exact") {
        flavor = Flavor::Exact;
      } else if (rest == "float") {
        flavor = Flavor::Float;
      } else {
        throw ParseError("scalar must be 'exact' or 'float'", line.offset);
      }
    } else if (kw == "split") {
      if (split) throw ParseError("duplicate 'split'", line.offset);
      auto [first, second] = keyword_rest(rest);
      split = {parse_nonneg(first, line.offset, "split size"),
               parse_nonneg(second, line.offset, "split size")};
    } else if (kw == "expr") {
      expr_lines.emplace_back(rest, line.offset);
    } else {
      throw ParseError("unknown keyword '" + std::string(kw) + "'",
                       line.offset);
    }
  }

  if (!dom) throw ParseError("missing 'dom' header", 0);
  if (!cod) throw ParseError("missing 'cod' header", 0);
  if (!flavor) throw ParseError("missing 'scalar' header", 0);
  if (static_cast<int>(expr_lines.size()) != *cod)
    throw ParseError("expected " + std::to_string(*cod) + " expr lines, found " +
                         std::to_string(expr_lines.size()),
                     0);
  if (split && split->first + split->second != *dom)
    throw ParseError("split does not sum to the domain dimension", 0);

  for (const auto& [src, offset] : expr_lines) {
    try {
      exprs.push_back(parse_expr(src, *dom, *flavor, nat_semiring));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), offset + e.pos());
    }
  }
  return MorphFile{Morph({*dom}, {*cod}, *flavor, std::move(exprs)), split};
}

std::string print_morph_file(const Morph& m,
                             std::optional<std::pair<int, int>> split) {
  std::string out;
  out += "dom " + std::to_string(m.dom().dim) + "\n";
  out += "cod " + std::to_string(m.cod().dim) + "\n";
  out += std::string("scalar ") + flavor_name(m.flavor()) + "\n";
  if (split)
    out += "split " + std::to_string(split->first) + " " +
           std::to_string(split->second) + "\n";
  for (const Expr& e : m.exprs()) out += "expr " + print_expr(e) + "\n";
  return out;
}

}  // namespace cdiff
