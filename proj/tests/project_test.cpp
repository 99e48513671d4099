#include "fixtures.hpp"
#include "oracles.hpp"

#include "sbc/project.hpp"
#include "sbc/textio.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace sbc;

namespace
{

SystemItg parse(const std::string & text)
{
  auto r = parse_model(text);
  if (!r.ok()) throw std::runtime_error(format_diagnostic(r.diagnostics.front()));
  return *r.system;
}

}  // namespace

TEST(ProjectClass, OssClassesAndCounts)
{
  const auto rel = project_class(support::oss());
  ASSERT_EQ(rel.rows.size(), 12u);
  std::map<std::string, int> per_class;
  for (const auto & r : rel.rows) {
    EXPECT_TRUE(r.class_name.is_object());
    ++per_class[r.class_name.notation()];
  }
  const std::map<std::string, int> expected{
    {":Customer_UI", 2},         {":Supplier_UI", 1},         {":Customer_Coordinator", 2},
    {":Supplier_Coordinator", 1}, {":Credit_Card_Service", 2}, {":Delivery_Order_Service", 4}};
  EXPECT_EQ(per_class, expected);
}

TEST(ProjectClass, CanonicalOrder)
{
  const auto rel = project_class(support::oss());
  EXPECT_TRUE(std::is_sorted(rel.rows.begin(), rel.rows.end(), [](const ClassRow & a, const ClassRow & b) {
    return std::make_pair(a.class_name.name.str(), a.signature.op_name.str()) <
           std::make_pair(b.class_name.name.str(), b.signature.op_name.str());
  }));
  EXPECT_EQ(row_cells(rel.rows.front())[0], ":Credit_Card_Service");
  EXPECT_EQ(row_cells(rel.rows.back())[1], "Shipping");
}

TEST(ProjectClass, EmptyRegion)
{
  const auto s = compose({Itg{Identifier("R"), Identifier("s0"), {}}}, Identifier("S"));
  EXPECT_TRUE(project_class(s).rows.empty());
  EXPECT_EQ(project_state(s).regions.at(0).rows.size(), 0u);
  EXPECT_EQ(project_sequence(s).relation.regions.at(0).rows.size(), 0u);
}

TEST(ProjectClass, UnmatchedCallPassesThrough)
{
  const auto rel = project_class(parse("system S { itg R { init a; a -> b : CAL A -> :B . f(in x); } }"));
  ASSERT_EQ(rel.rows.size(), 1u);
  EXPECT_EQ(row_cells(rel.rows[0]), (std::vector<std::string>{":B", "f", "in x"}));
}

TEST(ProjectClass, ReturnOnlyYieldsNothing)
{
  EXPECT_TRUE(project_class(parse("system S { itg R { init a; a -> b : RET A -> :B . f(out y); } }")).rows.empty());
}

TEST(ProjectClass, MergeKeyIgnoresCaller)
{
  const auto rel = project_class(parse(
    "system S { itg R { init a; a -> b : CAL A -> :B . f(in x); b -> a : RET :C -> :B . f(out y); } }"));
  ASSERT_EQ(rel.rows.size(), 1u);
  EXPECT_EQ(row_cells(rel.rows[0])[2], "in x; out y");
}

TEST(ProjectClass, MatchingIsRegionLocal)
{
  const auto rel = project_class(parse(
    "system S { itg R1 { init a; a -> b : CAL A -> :B . f(in x); }"
    " itg R2 { init a; a -> b : RET A -> :B . f(out y); } }"));
  ASSERT_EQ(rel.rows.size(), 1u);
  EXPECT_EQ(row_cells(rel.rows[0])[2], "in x");
}

TEST(ProjectClass, DistinctAcrossRegions)
{
  const auto rel = project_class(parse(
    "system S { itg R1 { init a; a -> b : CAL A -> :B . f(in x); }"
    " itg R2 { init c; c -> d : CAL Z -> :B . f(in x); d -> c : CAL A -> :B . f(in w); } }"));
  ASSERT_EQ(rel.rows.size(), 2u);
  EXPECT_EQ(row_cells(rel.rows[0])[2], "in w");
  EXPECT_EQ(row_cells(rel.rows[1])[2], "in x");
}

TEST(ProjectClass, AmbiguousReturn)
{
  const auto s = parse(
    "system S { itg R { init a; a -> b : CAL A -> :B . f(in x); b -> c : RET A -> :B . f(out y);"
    " c -> a : RET A -> :B . f(out z); } }");
  try {
    (void)project_class(s);
    FAIL();
  } catch (const ModelError & e) {
    EXPECT_EQ(e.code(), ErrorCode::AmbiguousReturn);
  }
}

TEST(ProjectClass, RepeatedIdenticalReturnIsNotAmbiguous)
{
  const auto s = parse(
    "system S { itg R { init a; a -> b : CAL A -> :B . f(in x); b -> c : RET A -> :B . f(out y);"
    " c -> a : RET C -> :B . f(out y); } }");
  EXPECT_EQ(project_class(s).rows.size(), 1u);
}

TEST(ProjectClass, MatchesReferenceOnOss)
{
  const auto s = support::oss();
  std::set<std::vector<std::string>> got;
  for (const auto & r : project_class(s).rows) got.insert(row_cells(r));
  EXPECT_EQ(got, support::class_rows(s));
}

TEST(MakeClassRelation, SortsAndDeduplicates)
{
  ClassRow a{Agent::object("B"), {Identifier("g"), {}}};
  ClassRow b{Agent::object("A"), {Identifier("z"), {}}};
  const auto rel = make_class_relation({a, b, a});
  EXPECT_EQ(rel.rows, (std::vector<ClassRow>{b, a}));
}

TEST(ProjectState, OssRegionOne)
{
  const auto rel = project_state(support::oss());
  ASSERT_EQ(rel.regions.size(), 3u);
  const auto & r1 = rel.regions[0];
  ASSERT_EQ(r1.rows.size(), 6u);
  EXPECT_EQ(row_cells(r1.region, r1.rows.front()),
            (std::vector<std::string>{"ITG_1", "s11", "CAL", "Request_Order_from_Customer", "s12"}));
  EXPECT_EQ(row_cells(r1.region, r1.rows.back()),
            (std::vector<std::string>{"ITG_1", "s16", "RET", "Request_Order_from_Customer", "s11"}));
  const auto & r3 = rel.regions[2];
  ASSERT_EQ(r3.rows.size(), 5u);
  EXPECT_EQ(row_cells(r3.region, r3.rows.back()),
            (std::vector<std::string>{"ITG_3", "s35", "RET", "Request_Order_Status_from_Customer", "s31"}));
}

TEST(ProjectState, ColumnFidelity)
{
  const auto s = support::oss();
  std::vector<std::vector<std::string>> got;
  for (const auto & region : project_state(s).regions)
    for (const auto & r : region.rows) got.push_back(row_cells(region.region, r));
  EXPECT_EQ(got, support::state_rows(s));
}

TEST(ProjectSequence, OssSupplierBlock)
{
  const auto p = project_sequence(support::oss());
  EXPECT_TRUE(p.warnings.empty());
  const auto & r2 = p.relation.regions.at(1);
  ASSERT_EQ(r2.rows.size(), 7u);
  for (std::size_t i = 0; i < r2.rows.size(); ++i) EXPECT_EQ(r2.rows[i].order, i + 1);
  EXPECT_EQ(row_cells(r2.region, r2.rows[0]),
            (std::vector<std::string>{"ITG_2", "1", "CAL", "Supplier", "Shipping", "in Order_Id", ":Supplier_UI"}));
}

TEST(ProjectSequence, BranchingRegionWarns)
{
  const auto p = project_sequence(support::itg01());
  ASSERT_EQ(p.relation.regions.at(0).rows.size(), 4u);
  ASSERT_EQ(p.warnings.size(), 1u);
  EXPECT_EQ(p.warnings[0].code, DiagnosticCode::BranchingRegion);
  EXPECT_EQ(p.warnings[0].severity, Severity::Warning);
  EXPECT_EQ(p.warnings[0].region, "ITG_01");
}

TEST(BranchingStates, OutDegreeTwoOrMore)
{
  EXPECT_EQ(branching_states(support::itg01().regions()[0]), std::vector<Identifier>{Identifier("s1")});
  EXPECT_TRUE(branching_states(support::oss().regions()[1]).empty());
}

TEST(Project, Deterministic)
{
  const auto s = support::oss();
  EXPECT_EQ(export_relation_csv(project_class(s)), export_relation_csv(project_class(s)));
  EXPECT_EQ(export_relation_csv(project_sequence(s).relation), export_relation_csv(project_sequence(s).relation));
}
