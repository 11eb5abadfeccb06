#include "vuix/grid_case.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "vuix/errors.hpp"

namespace vuix {

namespace {

struct RawRow {
  std::vector<double> values;
  int line = 0;
};

struct RawBlock {
  bool found = false;
  bool terminated = false;
  std::vector<RawRow> rows;
};

bool parse_number(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool to_int(double value, int& out) {
  if (std::floor(value) != value || std::abs(value) > 1e9) return false;
  out = static_cast<int>(value);
  return true;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Line-oriented scanner for "mpc.<name> = [ rows ];" blocks and scalar
// assignments. Rows end at ';' or end of line; '%' starts a comment;
// ',' counts as whitespace. Blocks other than bus/branch are skipped.
class CaseScanner {
 public:
  explicit CaseScanner(const std::string& text) : text_(text) {}

  void run() {
    std::istringstream in(text_);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto comment = line.find('%');
      if (comment != std::string::npos) line.resize(comment);
      consume_line(line, line_no);
    }
    if (in_block_)
      raise(ErrorCode::MalformedBlock, "mpc." + block_name_ + " matrix is not terminated with ]");
  }

  bool has_base_mva = false;
  double base_mva = 0.0;
  RawBlock bus;
  RawBlock branch;

 private:
  void consume_line(std::string_view rest, int line_no) {
    while (!rest.empty()) {
      if (in_block_) {
        const auto close = rest.find(']');
        const auto chunk = close == std::string_view::npos ? rest : rest.substr(0, close);
        scan_rows(chunk, line_no);
        if (close == std::string_view::npos) {
          flush_row(line_no);  // end of line ends a row
          return;
        }
        flush_row(line_no);
        end_block();
        rest = rest.substr(close + 1);
        const auto semi = rest.find(';');
        rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
        continue;
      }
      const auto key = rest.find("mpc.");
      if (key == std::string_view::npos) return;
      rest = rest.substr(key + 4);
      std::size_t p = 0;
      while (p < rest.size() && (std::isalnum(static_cast<unsigned char>(rest[p])) || rest[p] == '_')) ++p;
      const std::string name(rest.substr(0, p));
      rest = rest.substr(p);
      const auto eq = rest.find('=');
      if (eq == std::string_view::npos) continue;  // stray mention, not an assignment
      rest = rest.substr(eq + 1);
      const auto open = rest.find_first_not_of(" \t\r");
      if (open != std::string_view::npos && rest[open] == '[') {
        begin_block(name, line_no);
        rest = rest.substr(open + 1);
      } else {
        // scalar or string assignment, value runs to ';'
        const auto semi = rest.find(';');
        const std::string value = trim(semi == std::string_view::npos ? rest : rest.substr(0, semi));
        if (name == "baseMVA") {
          if (!parse_number(value, base_mva))
            raise(ErrorCode::BadRow,
                  "mpc.baseMVA (line " + std::to_string(line_no) + "): non-numeric value '" + value + "'");
          has_base_mva = true;
        }
        rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
      }
    }
  }

  void begin_block(const std::string& name, int line_no) {
    in_block_ = true;
    block_name_ = name;
    target_ = name == "bus" ? &bus : name == "branch" ? &branch : nullptr;
    if (target_) {
      if (target_->found)
        raise(ErrorCode::MalformedBlock,
              "duplicate mpc." + name + " block (line " + std::to_string(line_no) + ")");
      target_->found = true;
    }
  }

  void end_block() {
    if (target_) target_->terminated = true;
    in_block_ = false;
    target_ = nullptr;
    pending_.clear();
  }

  void scan_rows(std::string_view chunk, int line_no) {
    for (std::size_t i = 0; i <= chunk.size(); ++i) {
      const char c = i < chunk.size() ? chunk[i] : '\0';
      if (c == ';') {
        flush_row(line_no);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == ',' || c == '\0') {
        commit_token(line_no);
      } else {
        token_ += c;
      }
    }
  }

  void commit_token(int line_no) {
    if (token_.empty()) return;
    if (target_) {
      double value = 0.0;
      if (!parse_number(token_, value))
        raise(ErrorCode::BadRow, "mpc." + block_name_ + " (line " + std::to_string(line_no) +
                                     "): non-numeric token '" + token_ + "'");
      pending_.push_back(value);
    }
    token_.clear();
  }

  void flush_row(int line_no) {
    commit_token(line_no);
    if (!target_ || pending_.empty()) {
      pending_.clear();
      return;
    }
    target_->rows.push_back({pending_, line_no});
    pending_.clear();
  }

  const std::string& text_;
  bool in_block_ = false;
  std::string block_name_;
  RawBlock* target_ = nullptr;
  std::vector<double> pending_;
  std::string token_;
};

void check_block(const RawBlock& block, const char* name, std::size_t min_columns) {
  if (!block.found) raise(ErrorCode::MalformedBlock, std::string("missing mpc.") + name + " matrix block");
  if (!block.terminated)
    raise(ErrorCode::MalformedBlock, std::string("mpc.") + name + " matrix is not terminated with ]");
  if (block.rows.empty()) raise(ErrorCode::MalformedBlock, std::string("mpc.") + name + " matrix is empty");
  const std::size_t width = block.rows.front().values.size();
  for (std::size_t r = 0; r < block.rows.size(); ++r) {
    const auto& row = block.rows[r];
    if (row.values.size() != width || width < min_columns)
      raise(ErrorCode::BadRow, std::string("mpc.") + name + " row " + std::to_string(r + 1) + " (line " +
                                   std::to_string(row.line) + "): expected at least " +
                                   std::to_string(min_columns) + " columns, consistent across rows; got " +
                                   std::to_string(row.values.size()));
  }
}

int require_int(double value, const char* what, const char* block, const RawRow& row, std::size_t row_index) {
  int out = 0;
  if (!to_int(value, out))
    raise(ErrorCode::BadRow, std::string("mpc.") + block + " row " + std::to_string(row_index + 1) +
                                 " (line " + std::to_string(row.line) + "): " + what + " must be an integer");
  return out;
}

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

GridCase::GridCase(double base_mva, std::vector<BusRecord> buses, std::vector<BranchRecord> branches)
    : base_mva_(base_mva), buses_(std::move(buses)), branches_(std::move(branches)) {
  index_of_id_.reserve(buses_.size());
  int ref_count = 0;
  for (std::size_t i = 0; i < buses_.size(); ++i) {
    const auto& bus = buses_[i];
    if (!index_of_id_.emplace(bus.bus_id, static_cast<int>(i)).second)
      raise(ErrorCode::DuplicateBusId, "bus id " + std::to_string(bus.bus_id) + " appears more than once");
    if (bus.type == BusType::Ref) {
      reference_index_ = static_cast<int>(i);
      ++ref_count;
    }
  }
  if (ref_count != 1)
    raise(ErrorCode::NoReferenceBus,
          "expected exactly one reference (type 3) bus, found " + std::to_string(ref_count));
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const auto& br = branches_[i];
    if (!index_of_id_.count(br.from_bus) || !index_of_id_.count(br.to_bus))
      raise(ErrorCode::DanglingBranch, "branch " + std::to_string(i + 1) + " (" + std::to_string(br.from_bus) +
                                           "-" + std::to_string(br.to_bus) + ") references an unknown bus");
    if (br.in_service && br.reactance_x == 0.0)
      raise(ErrorCode::BadRow, "branch " + std::to_string(i + 1) + " is in service with zero reactance");
  }
}

int GridCase::in_service_branch_count() const noexcept {
  return static_cast<int>(
      std::count_if(branches_.begin(), branches_.end(), [](const BranchRecord& b) { return b.in_service; }));
}

int GridCase::bus_index(int bus_id) const {
  const auto it = index_of_id_.find(bus_id);
  if (it == index_of_id_.end())
    raise(ErrorCode::IndexOutOfRange, "unknown bus id " + std::to_string(bus_id));
  return it->second;
}

int GridCase::bus_id_at(int index) const {
  if (index < 0 || index >= bus_count())
    raise(ErrorCode::IndexOutOfRange, "bus index " + std::to_string(index) + " out of range");
  return buses_[static_cast<std::size_t>(index)].bus_id;
}

bool GridCase::operator==(const GridCase& other) const {
  return base_mva_ == other.base_mva_ && buses_ == other.buses_ && branches_ == other.branches_;
}

GridCase parse_case(const std::string& text) {
  CaseScanner scanner(text);
  scanner.run();
  if (!scanner.has_base_mva) raise(ErrorCode::MalformedBlock, "missing mpc.baseMVA assignment");
  check_block(scanner.bus, "bus", 2);
  check_block(scanner.branch, "branch", 11);

  std::vector<BusRecord> buses;
  buses.reserve(scanner.bus.rows.size());
  for (std::size_t r = 0; r < scanner.bus.rows.size(); ++r) {
    const auto& row = scanner.bus.rows[r];
    BusRecord bus;
    bus.bus_id = require_int(row.values[0], "bus id", "bus", row, r);
    const int type = require_int(row.values[1], "bus type", "bus", row, r);
    if (type < 1 || type > 4)
      raise(ErrorCode::BadRow, "mpc.bus row " + std::to_string(r + 1) + " (line " + std::to_string(row.line) +
                                   "): bus type " + std::to_string(type) + " is not in 1..4");
    bus.type = static_cast<BusType>(type);
    buses.push_back(bus);
  }

  std::vector<BranchRecord> branches;
  branches.reserve(scanner.branch.rows.size());
  for (std::size_t r = 0; r < scanner.branch.rows.size(); ++r) {
    const auto& row = scanner.branch.rows[r];
    BranchRecord br;
    br.from_bus = require_int(row.values[0], "from bus", "branch", row, r);
    br.to_bus = require_int(row.values[1], "to bus", "branch", row, r);
    br.reactance_x = row.values[3];
    br.tap_ratio = row.values[8];
    br.in_service = row.values[10] != 0.0;
    if (br.in_service && br.reactance_x == 0.0)
      raise(ErrorCode::BadRow, "mpc.branch row " + std::to_string(r + 1) + " (line " +
                                   std::to_string(row.line) + "): in-service branch has zero reactance");
    branches.push_back(br);
  }

  return GridCase(scanner.base_mva, std::move(buses), std::move(branches));
}

GridCase load_case(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::FileNotFound, "cannot open case file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_case(buffer.str());
}

std::string to_case_text(const GridCase& grid) {
  std::ostringstream out;
  out << "function mpc = case\n";
  out << "mpc.version = '2';\n";
  out << "mpc.baseMVA = " << fmt(grid.base_mva()) << ";\n";
  out << "mpc.bus = [\n";
  for (const auto& bus : grid.buses())
    out << "\t" << bus.bus_id << "\t" << static_cast<int>(bus.type) << "\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0;\n";
  out << "];\n";
  out << "mpc.branch = [\n";
  for (const auto& br : grid.branches())
    out << "\t" << br.from_bus << "\t" << br.to_bus << "\t0\t" << fmt(br.reactance_x) << "\t0\t0\t0\t0\t"
        << fmt(br.tap_ratio) << "\t0\t" << (br.in_service ? 1 : 0) << "\t0\t0;\n";
  out << "];\n";
  return out.str();
}

}  // namespace vuix
