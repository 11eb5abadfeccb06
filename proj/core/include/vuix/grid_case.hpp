#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace vuix {

/// MATPOWER bus type codes.
enum class BusType { PQ = 1, PV = 2, Ref = 3, Isolated = 4 };

struct BusRecord {
  int bus_id = 0;  // external id as written in the case file
  BusType type = BusType::PQ;

  bool operator==(const BusRecord&) const = default;
};

struct BranchRecord {
  int from_bus = 0;  // external bus ids
  int to_bus = 0;
  double reactance_x = 0.0;  // per-unit
  double tap_ratio = 0.0;    // 0 means nominal (treated as 1)
  bool in_service = true;

  bool operator==(const BranchRecord&) const = default;
};

/// Parsed topology of a MATPOWER-style case: buses and branches in file
/// order, with only the columns the DC measurement model consumes.
/// External bus ids are mapped to contiguous 0-based indices in file order;
/// the original ids are kept for reporting. Immutable after construction
/// and safe to share across threads.
class GridCase {
 public:
  GridCase(double base_mva, std::vector<BusRecord> buses, std::vector<BranchRecord> branches);

  double base_mva() const noexcept { return base_mva_; }
  const std::vector<BusRecord>& buses() const noexcept { return buses_; }
  const std::vector<BranchRecord>& branches() const noexcept { return branches_; }
  int bus_count() const noexcept { return static_cast<int>(buses_.size()); }
  int branch_count() const noexcept { return static_cast<int>(branches_.size()); }
  int in_service_branch_count() const noexcept;

  /// Contiguous 0-based index of an external bus id (IndexOutOfRange if unknown).
  int bus_index(int bus_id) const;
  /// External id of the bus at a 0-based index.
  int bus_id_at(int index) const;
  /// 0-based index of the unique reference bus.
  int reference_index() const noexcept { return reference_index_; }

  bool operator==(const GridCase& other) const;

 private:
  double base_mva_;
  std::vector<BusRecord> buses_;
  std::vector<BranchRecord> branches_;
  std::unordered_map<int, int> index_of_id_;
  int reference_index_ = -1;
};

/// Parse the mpc.baseMVA / mpc.bus / mpc.branch blocks of a MATPOWER case.
/// Unknown blocks (gen, gencost, ...) and '%' comments are skipped; columns
/// beyond the ones needed for the DC model are read and discarded.
GridCase parse_case(const std::string& text);

/// parse_case on the contents of a file (FileNotFound if unreadable).
GridCase load_case(const std::string& path);

/// Normalized case text: parse_case(to_case_text(g)) == g.
std::string to_case_text(const GridCase& grid);

}  // namespace vuix
