#include "mcct/chain_format.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <vector>

namespace mcct {
namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream stream(text);
  std::string raw;
  int number = 0;
  while (std::getline(stream, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    Line line;
    line.number = number;
    std::istringstream fields(raw);
    std::string token;
    while (fields >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

double parse_number(const std::string& token, int line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, "expected a number, got '" + token + "'");
  return value;
}

Vec parse_row(const Line& line, std::size_t n, const char* what) {
  if (line.tokens.size() != n)
    throw ParseError(line.number, std::string(what) + " needs " + std::to_string(n) +
                                      " values, got " + std::to_string(line.tokens.size()));
  Vec row(n);
  for (std::size_t j = 0; j < n; ++j) row[j] = parse_number(line.tokens[j], line.number);
  return row;
}

}  // namespace

std::string format_g17(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

ChainModel ChainDocument::chain() const {
  if (mode != ChainMode::discrete)
    throw ValidationError("document mode is continuous; no transition matrix");
  return ChainModel::create(matrix);
}

Generator ChainDocument::generator() const {
  if (mode != ChainMode::continuous)
    throw ValidationError("document mode is discrete; no generator");
  return Generator::create(matrix);
}

ProbabilityVector ChainDocument::start_distribution() const {
  if (!start) throw ValidationError("document has no start block");
  return ProbabilityVector::create(*start);
}

ChainDocument parse_chain_document(const std::string& text) {
  const std::vector<Line> lines = tokenize(text);
  std::size_t cursor = 0;
  auto next = [&]() -> const Line& {
    if (cursor >= lines.size())
      throw ParseError(lines.empty() ? 1 : lines.back().number, "unexpected end of file");
    return lines[cursor++];
  };

  ChainDocument doc;

  const Line& header = next();
  if (header.tokens.size() != 2 || header.tokens[0] != "mcct" || header.tokens[1] != "v1")
    throw ParseError(header.number, "expected header 'mcct v1'");

  const Line& mode_line = next();
  if (mode_line.tokens.size() != 2 || mode_line.tokens[0] != "mode")
    throw ParseError(mode_line.number, "expected 'mode discrete|continuous'");
  if (mode_line.tokens[1] == "discrete")
    doc.mode = ChainMode::discrete;
  else if (mode_line.tokens[1] == "continuous")
    doc.mode = ChainMode::continuous;
  else
    throw ParseError(mode_line.number, "unknown mode '" + mode_line.tokens[1] + "'");

  const Line& n_line = next();
  if (n_line.tokens.size() != 2 || n_line.tokens[0] != "n")
    throw ParseError(n_line.number, "expected 'n <count>'");
  const double n_value = parse_number(n_line.tokens[1], n_line.number);
  if (n_value < 2 || n_value != static_cast<double>(static_cast<std::size_t>(n_value)))
    throw ParseError(n_line.number, "state count must be an integer >= 2");
  doc.n = static_cast<std::size_t>(n_value);

  doc.matrix = Matrix(doc.n, doc.n, 0.0);
  for (std::size_t i = 0; i < doc.n; ++i) {
    const Line& row_line = next();
    const Vec row = parse_row(row_line, doc.n, "matrix row");
    for (std::size_t j = 0; j < doc.n; ++j) doc.matrix(i, j) = row[j];
  }

  while (cursor < lines.size()) {
    const Line& block = next();
    if (block.tokens[0] == "weights") {
      if (doc.weights) throw ParseError(block.number, "duplicate weights block");
      if (block.tokens.size() != 2)
        throw ParseError(block.number, "expected 'weights <steps>'");
      const double t_value = parse_number(block.tokens[1], block.number);
      if (t_value < 1 || t_value != static_cast<double>(static_cast<std::size_t>(t_value)))
        throw ParseError(block.number, "weights step count must be an integer >= 1");
      const auto t = static_cast<std::size_t>(t_value);
      std::vector<Vec> weights;
      weights.reserve(t);
      for (std::size_t i = 0; i < t; ++i) {
        const Line& row_line = next();
        Vec row = parse_row(row_line, doc.n, "weights row");
        for (double x : row)
          if (!(x >= 0.0 && x <= 1.0))
            throw ParseError(row_line.number, "weight entries must lie in [0, 1]");
        weights.push_back(std::move(row));
      }
      doc.weights = std::move(weights);
    } else if (block.tokens[0] == "start") {
      if (doc.start) throw ParseError(block.number, "duplicate start block");
      if (block.tokens.size() != 1) throw ParseError(block.number, "expected bare 'start'");
      const Line& row_line = next();
      doc.start = parse_row(row_line, doc.n, "start row");
    } else {
      throw ParseError(block.number, "unknown block '" + block.tokens[0] + "'");
    }
  }

  // Surface invariant violations now, with the module error text.
  if (doc.mode == ChainMode::discrete)
    (void)doc.chain();
  else
    (void)doc.generator();
  if (doc.start) (void)doc.start_distribution();

  return doc;
}

std::string emit_chain_document(const ChainDocument& doc) {
  std::ostringstream out;
  out << "mcct v1\n";
  out << "mode " << (doc.mode == ChainMode::discrete ? "discrete" : "continuous") << "\n";
  out << "n " << doc.n << "\n";
  auto emit_row = [&](const double* row) {
    for (std::size_t j = 0; j < doc.n; ++j) out << (j ? " " : "") << format_g17(row[j]);
    out << "\n";
  };
  for (std::size_t i = 0; i < doc.n; ++i) emit_row(doc.matrix.row(i).data());
  if (doc.weights) {
    out << "weights " << doc.weights->size() << "\n";
    for (const Vec& row : *doc.weights) emit_row(row.data());
  }
  if (doc.start) {
    out << "start\n";
    emit_row(doc.start->data());
  }
  return out.str();
}

}  // namespace mcct
