#include <catch2/catch_amalgamated.hpp>

#include "fcif/errors.hpp"
#include "fcif/io.hpp"
#include "fcif/profile.hpp"

using namespace fcif;

static Profile mk(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Value>> v;
  for (const auto& r : rows) {
    std::vector<Value> out;
    for (const auto& s : r) out.push_back(parse_value(s));
    v.push_back(out);
  }
  return Profile::from_rows(v);
}

TEST_CASE("bucket dichotomy is total and boundary-inclusive") {
  CHECK(bucket_of(parse_value("0.5"), kDefaultTheta) == Bucket::High);
  CHECK(bucket_of(parse_value("0.499999999"), kDefaultTheta) == Bucket::Low);
  CHECK(bucket_of(Value(0), kDefaultTheta) == Bucket::Low);
  CHECK(bucket_of(Value(1), kDefaultTheta) == Bucket::High);
  // configurable threshold
  CHECK(bucket_of(parse_value("0.5"), parse_value("0.6")) == Bucket::Low);
  CHECK(bucket_of(parse_value("0.6"), parse_value("0.6")) == Bucket::High);
}

TEST_CASE("column stats") {
  Profile p = mk({{"0.5", "0.5"}, {"0.5", "0.5"}});
  auto st = column_stats_of(p, 1, kDefaultTheta);
  CHECK(st.min == parse_value("0.5"));
  CHECK(st.max == parse_value("0.5"));
  CHECK(st.count_high == 2);
  CHECK(st.count_low == 0);
  CHECK_THROWS_AS(column_stats(std::vector<Value>{}, kDefaultTheta), EmptyVector);
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(Profile::from_rows({{Value(0), Value(1)}, {Value(0)}}), BadInput);
  CHECK_THROWS_AS(Profile::from_rows({}), BadInput);
  Profile p = mk({{"1"}});
  CHECK(p.n() == 1);
  CHECK_THROWS_AS(p.at(2, 1), IndexOutOfRange);
  CHECK_THROWS_AS(p.at(0, 1), IndexOutOfRange);
}

TEST_CASE("domain class membership on fixtures") {
  // each row contains a 1 and a 0 -> P*; P* ⊂ P** ⊂ P***
  Profile star = mk({{"1", "0"}, {"0", "1"}});
  CHECK(in_domain_class(star, DomainClass::PStar));
  CHECK(in_domain_class(star, DomainClass::PStarStar));
  CHECK(in_domain_class(star, DomainClass::PStarStarStar));

  // each row crosses theta on both sides but not the extremes -> P** not P*
  Profile star2 = mk({{"0.6", "0.4"}, {"0.3", "0.7"}});
  CHECK_FALSE(in_domain_class(star2, DomainClass::PStar));
  CHECK(in_domain_class(star2, DomainClass::PStarStar));
  CHECK(in_domain_class(star2, DomainClass::PStarStarStar));

  // rows merely not constant-extreme -> P*** only
  Profile star3 = mk({{"0.6", "0.7"}, {"0.8", "0.9"}});
  CHECK_FALSE(in_domain_class(star3, DomainClass::PStarStar));
  CHECK(in_domain_class(star3, DomainClass::PStarStarStar));

  Profile ones = mk({{"1", "1"}, {"1", "1"}});
  CHECK_FALSE(in_domain_class(ones, DomainClass::PStarStarStar));
  CHECK(in_domain_class(ones, DomainClass::All));
}

TEST_CASE("range class membership") {
  MembershipFunction f({Value(1), Value(0)});
  CHECK(in_range_class(f, RangeClass::FStar));
  MembershipFunction g({parse_value("0.5"), parse_value("0.5")});
  // boundary entry counts for both sides of F** (>= and <=)
  CHECK(in_range_class(g, RangeClass::FStarStar));
  CHECK_FALSE(in_range_class(g, RangeClass::FStar));
  MembershipFunction zeros({Value(0), Value(0)});
  CHECK_FALSE(in_range_class(zeros, RangeClass::FStarStarStar));
  CHECK(in_range_class(zeros, RangeClass::All));
}

TEST_CASE("class nesting holds exhaustively at n=2, step 1/4") {
  std::vector<Value> grid;
  for (int k = 0; k <= 4; ++k) grid.push_back(Value(k, 4));
  std::vector<Value> cells(4);
  int idx[4] = {0, 0, 0, 0};
  long long count = 0;
  while (true) {
    for (int c = 0; c < 4; ++c) cells[c] = grid[idx[c]];
    Profile p = Profile::from_rows({{cells[0], cells[1]}, {cells[2], cells[3]}});
    if (in_domain_class(p, DomainClass::PStar)) {
      REQUIRE(in_domain_class(p, DomainClass::PStarStar));
    }
    if (in_domain_class(p, DomainClass::PStarStar)) {
      REQUIRE(in_domain_class(p, DomainClass::PStarStarStar));
    }
    MembershipFunction f({cells[0], cells[1]});
    if (in_range_class(f, RangeClass::FStar)) REQUIRE(in_range_class(f, RangeClass::FStarStar));
    if (in_range_class(f, RangeClass::FStarStar)) {
      REQUIRE(in_range_class(f, RangeClass::FStarStarStar));
    }
    ++count;
    int c = 3;
    while (c >= 0 && idx[c] == 4) idx[c--] = 0;
    if (c < 0) break;
    ++idx[c];
  }
  CHECK(count == 625);
}

TEST_CASE("class names round-trip") {
  CHECK(domain_class_name(domain_class_from_string("P*")) == "P*");
  CHECK(domain_class_name(domain_class_from_string("P***")) == "P***");
  CHECK(range_class_name(range_class_from_string("F**")) == "F**");
  CHECK_THROWS_AS(domain_class_from_string("Q*"), BadInput);
}

TEST_CASE("profile JSON round-trip") {
  Profile p = mk({{"0.2", "0.3", "0.9"}, {"0.9", "0.9", "1"}, {"1", "0", "0.3"}});
  json j = profile_to_json(p);
  LoadedProfile back = profile_from_json(j);
  CHECK(back.profile == p);
  CHECK_FALSE(back.theta.has_value());

  LoadedProfile with_theta = profile_from_json_text(
      R"({"n":2,"theta":"0.6","rows":[["0.1","0.9"],["0.6","0.4"]]})");
  CHECK(with_theta.theta == parse_value("0.6"));
  CHECK(with_theta.profile.at(1, 2) == parse_value("0.9"));

  CHECK_THROWS_AS(profile_from_json_text(R"({"n":3,"rows":[["0.1","0.9"],["0.6","0.4"]]})"),
                  BadInput);
  CHECK_THROWS_AS(profile_from_json_text(R"({"rows":[["0.1"],["0.6","0.4"]]})"), BadInput);
}

TEST_CASE("profile CSV parsing") {
  Profile p = profile_from_csv("0.1, 0.9\n0.6, 0.4\n");
  CHECK(p == mk({{"0.1", "0.9"}, {"0.6", "0.4"}}));
  CHECK_THROWS_AS(profile_from_csv("0.1,0.9\n0.6\n"), BadInput);
}

TEST_CASE("fixture files load") {
  std::string dir = FCIF_FIXTURE_DIR;
  LoadedProfile e5 = load_profile(dir + "/example5.json");
  CHECK(e5.profile.n() == 3);
  CHECK(e5.profile.at(3, 1) == Value(1));
  for (int k = 1; k <= 11; ++k) {
    LoadedProfile pk = load_profile(dir + "/p" + std::to_string(k) + ".json");
    CHECK(pk.profile.n() == 3);
  }
}

TEST_CASE("membership JSON") {
  MembershipFunction m({parse_value("0.75"), parse_value("0.25"), parse_value("0.75")});
  CHECK(membership_to_json(m).dump() == R"({"values":["0.75","0.25","0.75"]})");
  CHECK(membership_from_json_text(membership_to_json(m).dump()) == m);
  CHECK_THROWS_AS(MembershipFunction({Value(3, 2)}), ResultOutOfUnitInterval);
}
