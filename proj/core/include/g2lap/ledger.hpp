#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace g2lap {

/// One printed formula checked against an independent recomputation.
/// When the two disagree, `recomputed` holds the corrected statement.
struct LedgerEntry {
  std::string location;
  std::string expression;
  std::string recomputed;
  bool match = false;
};

/// Recomputes the published closed forms from brackets, metrics and Hodge
/// stars, exactly where possible.
std::vector<LedgerEntry> formula_ledger();

/// JSON array of {location, expression, recomputed, match}.
void write_ledger_json(std::ostream& os, const std::vector<LedgerEntry>& entries);

}  // namespace g2lap
