#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace trajgroup;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::ParseError;
}

io::RawTrajectories parse(const std::string& text) {
  std::istringstream in(text);
  return io::load_csv(in);
}

}  // namespace

TEST(LoadCsv, GroupsRowsByEntity) {
  const auto raw = parse("entity_id,t,x,y\nb,1,0,0\na,0,1,1\nb,0,2,2\na,1,3,3\na,2,4,4\nb,2,5,5\n");
  ASSERT_EQ(raw.ids.size(), 2u);
  EXPECT_EQ(raw.ids[0], "b");
  EXPECT_EQ(raw.samples[0].size(), 3u);
  EXPECT_DOUBLE_EQ(raw.samples[0][0].t, 0.0);
  EXPECT_DOUBLE_EQ(raw.samples[0][0].p.x, 2.0);
}

TEST(LoadCsv, HeaderIsOptional) {
  EXPECT_EQ(parse("a,0,0,0\na,1,1,1\n").samples[0].size(), 2u);
}

TEST(LoadCsv, MalformedRowReportsLine) {
  try {
    parse("entity_id,t,x,y\na,0,0,0\n\na,1,oops,0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { parse("a,0,0\n"); }), ErrorCode::ParseError);
}

TEST(LoadCsv, DuplicateSample) {
  EXPECT_EQ(code_of([] { parse("a,0,0,0\na,0,1,1\n"); }), ErrorCode::DuplicateSample);
}

TEST(Resample, InterpolatesOnGrid) {
  const auto raw = parse("a,0,0,0\na,2,2,4\n");
  const Dataset d = io::resample(raw, {1.0});
  ASSERT_EQ(d.times, (std::vector<double>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(d.trajectories[0][1].x, 1.0);
  EXPECT_DOUBLE_EQ(d.trajectories[0][1].y, 2.0);
}

TEST(Resample, CommonWindowAndClip) {
  const auto raw = parse("a,0,0,0\na,4,4,0\nb,1,0,1\nb,3,0,3\n");
  const Dataset d = io::resample(raw, {1.0});
  EXPECT_EQ(d.times, (std::vector<double>{1, 2, 3}));

  io::ResampleOptions wide{1.0};
  wide.from = 0;
  wide.to = 4;
  EXPECT_EQ(code_of([&] { io::resample(raw, wide); }), ErrorCode::EntityOutsideWindow);
  wide.clip = true;
  const Dataset clipped = io::resample(raw, wide);
  EXPECT_EQ(clipped.ids, (std::vector<std::string>{"a"}));
}

TEST(Resample, DisjointRangesAreAnError) {
  const auto raw = parse("a,0,0,0\na,1,1,0\nb,2,0,1\nb,3,0,3\n");
  EXPECT_EQ(code_of([&] { io::resample(raw, {0.5}); }), ErrorCode::EmptyCommonWindow);
}

TEST(Resample, StarkeyScale) {
  const Dataset src = gen::gen_flock(126, 1263, 5);
  std::stringstream csv;
  io::write_dataset_csv(csv, src);
  const Dataset d = io::resample(io::load_csv(csv), {1.0});
  EXPECT_EQ(d.num_entities(), 126u);
  EXPECT_EQ(d.times.size(), 1264u);
  EXPECT_NO_THROW(validate(d));
}

TEST(ToDataset, RequiresCommonTimestamps) {
  EXPECT_EQ(code_of([] { io::to_dataset(parse("a,0,0,0\na,1,0,0\nb,0,0,0\nb,2,0,0\n")); }),
            ErrorCode::RaggedTrajectory);
}

TEST(Csv, DatasetRoundTrip) {
  const Dataset d = fixtures::crossing_pairs();
  std::stringstream s;
  io::write_dataset_csv(s, d);
  const Dataset back = io::to_dataset(io::load_csv(s));
  EXPECT_EQ(back.ids, d.ids);
  EXPECT_EQ(back.times, d.times);
  for (std::size_t e = 0; e < d.num_entities(); ++e)
    for (std::size_t k = 0; k < d.times.size(); ++k) {
      EXPECT_EQ(back.trajectories[e][k].x, d.trajectories[e][k].x);
      EXPECT_EQ(back.trajectories[e][k].y, d.trajectories[e][k].y);
    }
}

TEST(Json, GroupsRoundTrip) {
  const Dataset d = fixtures::crossing_pairs();
  const ReebGraph g = build_reeb(d, 1.0);
  const auto groups = compute_maximal_groups(g, 1, 0.0);
  const auto j = io::groups_to_json(groups, g.entity_ids);
  const auto back = io::groups_from_json(io::json::parse(j.dump()), g.entity_ids);
  EXPECT_EQ(back, groups);
  EXPECT_EQ(j[0].at("entities").size(), groups[0].entities.size());
  EXPECT_TRUE(j[0].contains("start"));
  EXPECT_TRUE(j[0].contains("end"));
}

TEST(Json, ReebRoundTrip) {
  const ReebGraph g = robustify(build_reeb(fixtures::walker(), 1.0), 1.0);
  const ReebGraph back = io::reeb_from_json(io::json::parse(io::reeb_to_json(g).dump()));
  ASSERT_EQ(back.vertices.size(), g.vertices.size());
  ASSERT_EQ(back.edges.size(), g.edges.size());
  EXPECT_EQ(back.entity_ids, g.entity_ids);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    EXPECT_EQ(back.vertices[v].time, g.vertices[v].time);
    EXPECT_EQ(back.vertices[v].kind, g.vertices[v].kind);
    EXPECT_EQ(back.vertices[v].in, g.vertices[v].in);
    EXPECT_EQ(back.vertices[v].out, g.vertices[v].out);
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) EXPECT_EQ(back.edges[e].component, g.edges[e].component);
  EXPECT_NO_THROW(audit(back));
}

TEST(Dot, IsDagInTimeOrder) {
  const ReebGraph g = build_reeb(fixtures::crossing_pairs(), 1.0);
  std::ostringstream out;
  io::write_dot(out, g, true);
  const std::string dot = out.str();
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("merge@"), std::string::npos);
  EXPECT_NE(dot.find("\"4: x1,x2,x3,x4\""), std::string::npos);
  // Every edge line "vA -> vB" goes forward in time.
  std::istringstream lines(dot);
  std::string line;
  std::size_t edges = 0;
  while (std::getline(lines, line)) {
    unsigned a = 0, b = 0;
    if (std::sscanf(line.c_str(), "  v%u -> v%u", &a, &b) == 2) {
      ++edges;
      EXPECT_LE(g.vertices[a].time, g.vertices[b].time);
    }
  }
  EXPECT_EQ(edges, g.edges.size());
}

TEST(GroupsCsv, Format) {
  const ReebGraph g = build_reeb(fixtures::crossing_pairs(), 1.0);
  std::ostringstream out;
  io::write_groups_csv(out, compute_maximal_groups(g, 4, 0.2), g.entity_ids);
  EXPECT_EQ(out.str(), "start,end,size,ids\n0.8571428571428571,2.142857142857143,4,x1;x2;x3;x4\n");
}
