#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "g2lap/ledger.hpp"

using namespace g2lap;

namespace {

const std::vector<LedgerEntry>& ledger() {
  static const auto entries = formula_ledger();
  return entries;
}

const LedgerEntry* find(std::string_view fragment) {
  for (const auto& e : ledger())
    if (e.location.find(fragment) != std::string::npos || e.expression.find(fragment) != std::string::npos) return &e;
  return nullptr;
}

}  // namespace

TEST(Ledger, HasEnoughEntries) {
  EXPECT_GE(ledger().size(), 20u);
  for (const auto& e : ledger()) {
    EXPECT_FALSE(e.location.empty());
    EXPECT_FALSE(e.expression.empty());
    EXPECT_FALSE(e.recomputed.empty());
  }
}

TEST(Ledger, StatementsAreUnique) {
  std::vector<std::string> locs;
  for (const auto& e : ledger()) locs.push_back(e.location + '|' + e.expression);
  std::sort(locs.begin(), locs.end());
  EXPECT_EQ(std::adjacent_find(locs.begin(), locs.end()), locs.end());
}

TEST(Ledger, KnownAgreementsAndCorrections) {
  const auto* coclosed = find("*_phi d on the coclosed block");
  ASSERT_NE(coclosed, nullptr);
  EXPECT_TRUE(coclosed->match);

  const auto* count = find("number of nearly parallel fixed points");
  ASSERT_NE(count, nullptr);
  EXPECT_FALSE(count->match);
  EXPECT_NE(count->recomputed.find("4 fixed points"), std::string::npos);

  std::size_t mismatches = 0;
  for (const auto& e : ledger())
    if (!e.match) {
      ++mismatches;
      EXPECT_NE(e.recomputed, e.expression) << e.location;
    }
  EXPECT_GT(mismatches, 0u);
  EXPECT_LT(mismatches, ledger().size() / 2);
}

TEST(Ledger, JsonSchema) {
  std::ostringstream os;
  write_ledger_json(os, ledger());
  const auto j = nlohmann::json::parse(os.str());
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), ledger().size());
  for (const auto& e : j) {
    ASSERT_EQ(e.size(), 4u);
    EXPECT_TRUE(e.at("location").is_string());
    EXPECT_TRUE(e.at("expression").is_string());
    EXPECT_TRUE(e.at("recomputed").is_string());
    EXPECT_TRUE(e.at("match").is_boolean());
  }
}
