#include <cstring>
#include <string>

#include <gtest/gtest.h>

#include "gnt/gnt.h"

TEST(CApi, TupleLifecycle) {
    // A_1 = diag(0.5, -1.5), A_2 = diag(2, 0.25)
    const double entries[] = {0.5, 0, 0, -1.5, 2, 0, 0, 0.25};
    gnt_tuple* t = nullptr;
    ASSERT_EQ(gnt_tuple_create(2, 2, entries, &t), GNT_OK);
    int q = 0, m = 0;
    ASSERT_EQ(gnt_tuple_shape(t, &q, &m), GNT_OK);
    EXPECT_EQ(q, 2);
    EXPECT_EQ(m, 2);

    const int u11[] = {1, 1};
    double s = 0;
    ASSERT_EQ(gnt_sigma(t, u11, &s), GNT_OK);
    EXPECT_DOUBLE_EQ(s, 0.5 * 0.25 + -1.5 * 2);
    const int u30[] = {3, 0};
    ASSERT_EQ(gnt_sigma(t, u30, &s), GNT_OK);
    EXPECT_EQ(s, 0.0);

    // T_(1,0) = sigma_(1,0) I - A_1 = diag(-1.5, 0.5)
    const int u10[] = {1, 0};
    double out[4];
    ASSERT_EQ(gnt_newton(t, u10, out), GNT_OK);
    EXPECT_DOUBLE_EQ(out[0], -1.5);
    EXPECT_DOUBLE_EQ(out[3], 0.5);
    EXPECT_EQ(out[1], 0.0);

    const char* json = nullptr;
    ASSERT_EQ(gnt_sigma_table_json(t, &json), GNT_OK);
    EXPECT_NE(std::string(json).find("\"sigma\""), std::string::npos);

    const int bad[] = {-1, 0};
    EXPECT_EQ(gnt_sigma(t, bad, &s), GNT_PRECONDITION);
    EXPECT_STRNE(gnt_last_error(), "");
    gnt_tuple_free(t);
}

TEST(CApi, ParsingAndLimits) {
    gnt_tuple* t = nullptr;
    EXPECT_EQ(gnt_tuple_from_json("{\"matrices\":[[[1,2],[3,4]]]}", &t), GNT_OK);
    EXPECT_STREQ(gnt_last_error(), "");
    gnt_tuple_free(t);
    EXPECT_EQ(gnt_tuple_from_csv("1 0\n0 1\n\n2 0\n0 2\n", &t), GNT_OK);
    gnt_tuple_free(t);

    gnt_tuple* none = nullptr;
    EXPECT_EQ(gnt_tuple_from_json("{\"matrices\":", &none), GNT_PARSE);
    EXPECT_EQ(none, nullptr);
    EXPECT_EQ(gnt_tuple_from_csv("1 2\n3\n", &none), GNT_PARSE);
    const double zeros[81] = {};
    EXPECT_EQ(gnt_tuple_create(1, 9, zeros, &none), GNT_LIMIT);
    EXPECT_EQ(gnt_tuple_create(5, 1, zeros, &none), GNT_LIMIT);
    EXPECT_EQ(gnt_tuple_create(1, 2, nullptr, &none), GNT_INVALID_ARGUMENT);
    EXPECT_EQ(gnt_tuple_shape(nullptr, nullptr, nullptr), GNT_INVALID_ARGUMENT);
    gnt_tuple_free(nullptr);
}

TEST(CApi, RunReports) {
    gnt_report* r = nullptr;
    ASSERT_EQ(gnt_run("identities", "{\"q\":[1,2],\"m\":[2],\"trials\":5}", &r), GNT_OK);
    EXPECT_EQ(gnt_report_passed(r), 1);
    EXPECT_EQ(std::string(gnt_report_json(r)).rfind("{\n  \"command\": \"identities\"", 0), 0u);
    EXPECT_EQ(std::string(gnt_report_csv(r)).rfind("name,anchor,lhs,rhs", 0), 0u);
    gnt_report_free(r);

    r = nullptr;
    EXPECT_EQ(gnt_run("identities", "{\"unknown\":1}", &r), GNT_PARSE);
    EXPECT_EQ(r, nullptr);
    EXPECT_NE(std::string(gnt_last_error()).find("unknown"), std::string::npos);
    EXPECT_EQ(gnt_run("identities", "not json", &r), GNT_PARSE);
    EXPECT_EQ(gnt_run("identities", "{\"q\":[7]}", &r), GNT_LIMIT);
    EXPECT_EQ(gnt_run("variation", "{\"immersion\":\"flat_torus\",\"u\":[1,0],\"c\":1}", &r), GNT_PRECONDITION);
    EXPECT_EQ(gnt_run(nullptr, "{}", &r), GNT_INVALID_ARGUMENT);
    EXPECT_EQ(gnt_report_passed(nullptr), 0);
    EXPECT_STREQ(gnt_version(), "1.0.0");
}
