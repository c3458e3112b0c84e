// Copyright 2026 The tensorfm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "tensorfm/dataset_io.hpp"
#include "tensorfm/error.hpp"
#include "tensorfm/synthetic.hpp"
#include "test_support.hpp"

namespace tfm {
namespace {

using testing::TempDir;

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

TEST(CanonicalFormat, RoundTripIsBitExact) {
  testing::Rng rng(1);
  const FieldSchema schema = testing::random_schema(rng, 6, 9);
  Dataset d{schema, {}, "random"};
  for (int i = 0; i < 300; ++i) {
    Instance x = testing::random_instance(schema, rng, 0.5);
    if (i % 7 == 0) x.values[0] = 0.1 + 1e-17 * i;  // needs all 17 digits
    if (i % 11 == 0) x.values[1] = -3.0e-300;
    d.instances.push_back(x);
  }
  std::stringstream buffer;
  write_dataset(buffer, d);
  const Dataset back = read_dataset(buffer);
  EXPECT_EQ(back.schema, d.schema);
  EXPECT_EQ(back.instances, d.instances);
  std::stringstream again;
  write_dataset(again, back);
  std::stringstream first;
  write_dataset(first, d);
  EXPECT_EQ(first.str(), again.str());
}

TEST(CanonicalFormat, LayoutOmitsUnitValues) {
  Dataset d{FieldSchema::build({3, 2}), {Instance{{2, 0}, {1.0, 0.5}, 1}}, ""};
  std::ostringstream out;
  write_dataset(out, d);
  EXPECT_EQ(out.str(), "#schema 3,2\n1 0:2 1:0:0.5\n");
}

TEST(CanonicalFormat, RejectsMalformedLines) {
  for (const char* text : {"1 0:0\n", "#schema 2\n1 0:2\n", "#schema 2\n3 0:0\n", "#schema 2,2\n1 0:0\n",
                           "#schema 2,2\n1 1:0 0:0\n", "#schema 2\n1 0:x\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_dataset(in), Error) << text;
  }
}

TEST(LoadTabular, OneRowOneCategoricalField) {
  TempDir dir;
  write_file(dir / "one.csv", "y,color\n1,red\n");
  TabularOptions o;
  o.label_column = "y";
  // a single-row file cannot carry two label classes
  EXPECT_THROW(load_tabular(dir / "one.csv", o), DataError);
  write_file(dir / "two.csv", "y,color\n1,red\n0,red\n");
  const TabularLoad load = load_tabular(dir / "two.csv", o);
  EXPECT_EQ(load.dataset.schema.num_fields(), 1u);
  EXPECT_EQ(load.dataset.schema.num_features(), 2u);  // "red" + unknown
  EXPECT_EQ(load.dataset.size(), 2u);
}

TEST(LoadTabular, NumericBinsFromMinMax) {
  TempDir dir;
  write_file(dir / "n.csv", "y,x\n0,0.0\n1,0.5\n0,1.0\n");
  TabularOptions o;
  o.label_column = "y";
  o.numeric_columns = {"x"};
  o.numeric_bins = 5;
  const TabularLoad load = load_tabular(dir / "n.csv", o);
  ASSERT_EQ(load.dataset.size(), 3u);
  EXPECT_EQ(load.dataset.instances[0].active[0], 0u);
  EXPECT_EQ(load.dataset.instances[1].active[0], 2u);
  EXPECT_EQ(load.dataset.instances[2].active[0], 4u);
  EXPECT_EQ(load.dataset.schema.cardinality(0), 6u);
  EXPECT_TRUE(load.numeric[0]);
}

TEST(LoadTabular, EqualWidthBinEdges) {
  EXPECT_EQ(equal_width_bin(0.0, 5), 0u);
  EXPECT_EQ(equal_width_bin(0.19999, 5), 0u);
  EXPECT_EQ(equal_width_bin(0.2, 5), 1u);
  EXPECT_EQ(equal_width_bin(0.5, 5), 2u);
  EXPECT_EQ(equal_width_bin(0.8, 5), 4u);
  EXPECT_EQ(equal_width_bin(1.0, 5), 4u);
}

TEST(LoadTabular, MissingColumnAndSkippedRows) {
  TempDir dir;
  write_file(dir / "m.csv", "y,a,b\n1,u,v\n0,w\n0,u,v\n1,u,v,extra\n");
  TabularOptions o;
  o.label_column = "y";
  o.field_columns = {"a", "c"};
  EXPECT_THROW(load_tabular(dir / "m.csv", o), DataError);
  o.field_columns = {"a", "b"};
  const TabularLoad load = load_tabular(dir / "m.csv", o);
  EXPECT_EQ(load.skipped_rows, 2u);
  EXPECT_EQ(load.dataset.size(), 2u);
  write_file(dir / "three.csv", "y,a\n1,u\n0,u\nmaybe,u\n");
  o.field_columns = {"a"};
  EXPECT_THROW(load_tabular(dir / "three.csv", o), DataError);
}

TEST(LoadTabular, LabelMapping) {
  TempDir dir;
  write_file(dir / "pm.csv", "y,a\n-1,u\n1,v\n1,u\n");
  TabularOptions o;
  o.label_column = "y";
  const TabularLoad load = load_tabular(dir / "pm.csv", o);
  EXPECT_EQ(load.dataset.instances[0].label, 0);
  EXPECT_EQ(load.dataset.instances[1].label, 1);
  write_file(dir / "one_class.csv", "y,a\n1,u\n1,v\n");
  EXPECT_THROW(load_tabular(dir / "one_class.csv", o), DataError);
}

TEST(LoadTabular, MinCountSendsRareValuesToUnknown) {
  TempDir dir;
  write_file(dir / "r.csv", "y,a\n1,u\n0,u\n1,rare\n0,u\n");
  TabularOptions o;
  o.label_column = "y";
  o.min_count = 2;
  const TabularLoad load = load_tabular(dir / "r.csv", o);
  EXPECT_EQ(load.dataset.schema.cardinality(0), 2u);
  EXPECT_EQ(load.dataset.instances[2].active[0], 1u);
}

TEST(LoadTabular, CriteoLayout) {
  TempDir dir;
  testing::write_criteo_like(dir / "c.tsv", 400, 3);
  TabularOptions o = criteo_options();
  o.min_count = 1;
  const TabularLoad load = load_tabular(dir / "c.tsv", o);
  EXPECT_EQ(load.dataset.schema.num_fields(), 39u);
  EXPECT_EQ(load.dataset.size(), 400u);
  EXPECT_EQ(load.skipped_rows, 0u);
}

TEST(Split, TenRows) {
  Dataset d{FieldSchema::build({10}), {}, ""};
  for (FeatureIndex i = 0; i < 10; ++i) d.instances.push_back(Instance::categorical({i}, static_cast<int>(i % 2)));
  const Split s = split(d, {0.7, 0.15, 0.15}, 1);
  EXPECT_EQ(s.train.size(), 7u);
  EXPECT_EQ(s.valid.size(), 1u);
  EXPECT_EQ(s.test.size(), 2u);
  std::multiset<FeatureIndex> seen;
  for (const Dataset* part : {&s.train, &s.valid, &s.test}) {
    for (const auto& x : part->instances) seen.insert(x.active[0]);
  }
  EXPECT_EQ(seen.size(), 10u);
  EXPECT_EQ(std::set<FeatureIndex>(seen.begin(), seen.end()).size(), 10u);
}

TEST(Split, FollowsFloorRuleAtScale) {
  Dataset d{FieldSchema::build({2}), std::vector<Instance>(5856, Instance::categorical({0}, 0)), ""};
  const Split s = split(d, {0.7, 0.15, 0.15}, 3);
  EXPECT_EQ(s.train.size(), 4099u);
  EXPECT_EQ(s.valid.size(), 878u);
  EXPECT_EQ(s.test.size(), 879u);
}

TEST(Split, DeterministicBySeed) {
  SyntheticSpec spec;
  spec.n_samples = 200;
  const Dataset d = generate_synthetic(spec);
  const Split a = split(d, {0.5, 0.25, 0.25}, 5);
  const Split b = split(d, {0.5, 0.25, 0.25}, 5);
  EXPECT_EQ(a.train.instances, b.train.instances);
  EXPECT_EQ(a.test.instances, b.test.instances);
  const Split c = split(d, {0.5, 0.25, 0.25}, 6);
  EXPECT_NE(a.train.instances, c.train.instances);
}

TEST(Split, Errors) {
  Dataset small{FieldSchema::build({2}), std::vector<Instance>(2, Instance::categorical({0}, 0)), ""};
  EXPECT_THROW(split(small, {0.7, 0.15, 0.15}, 0), DataError);
  Dataset d{FieldSchema::build({2}), std::vector<Instance>(10, Instance::categorical({0}, 0)), ""};
  EXPECT_THROW(split(d, {0.7, 0.2, 0.2}, 0), ConfigError);
  EXPECT_THROW(split(d, {0.0, 0.5, 0.5}, 0), ConfigError);
}

}  // namespace
}  // namespace tfm
