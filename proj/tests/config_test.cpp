// Copyright 2026 The eppflags Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "eppflags/config.hpp"

namespace eppflags {
namespace {

TEST(Config, ParsesAssignmentsAndComments) {
    const Config c = Config::parse("# header\n\n  a = 1.5 \nname=binary\nflag = yes\n");
    EXPECT_DOUBLE_EQ(c.get_double("a", 0.0), 1.5);
    EXPECT_EQ(c.get_string("name", ""), "binary");
    EXPECT_TRUE(c.get_bool("flag", false));
    EXPECT_EQ(c.get_uint("missing", 7u), 7u);
    EXPECT_FALSE(c.contains("missing"));
}

TEST(Config, ReportsLineNumbers) {
    try {
        Config::parse("a = 1\n# ok\nbroken line\n");
        FAIL() << "no error";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 3);
    }
    try {
        Config::parse("a = 1\na = 2\n");
        FAIL() << "no error";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 2);
    }
    const Config c = Config::parse("x = 1\ny = abc\n");
    try {
        c.get_double("y", 0.0);
        FAIL() << "no error";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 2);
    }
}

TEST(Config, RejectsBadValues) {
    const Config c = Config::parse("n = -3\nb = maybe\nx = 1.5e\n");
    EXPECT_THROW(c.get_uint("n", 0), ConfigError);
    EXPECT_THROW(c.get_bool("b", false), ConfigError);
    EXPECT_THROW(c.get_double("x", 0.0), ConfigError);
    EXPECT_THROW(c.require_double("absent"), ConfigError);
    EXPECT_THROW(c.require_string("absent"), ConfigError);
    EXPECT_THROW(Config::parse(" = 3\n"), ConfigError);
}

TEST(Config, OverridesReplaceValues) {
    Config c = Config::parse("a = 1\n");
    c.set_assignment("a=2");
    c.set_assignment(" b = text ");
    EXPECT_DOUBLE_EQ(c.get_double("a", 0.0), 2.0);
    EXPECT_EQ(c.get_string("b", ""), "text");
    EXPECT_THROW(c.set_assignment("no equals"), ConfigError);
    EXPECT_THROW(c.set_assignment("=1"), ConfigError);
}

TEST(Config, TextRoundTrips) {
    Config c;
    c.set("z", "1");
    c.set("a", format_double(0.1));
    const Config back = Config::parse(c.to_text());
    EXPECT_EQ(back.entries(), c.entries());
}

TEST(Config, FormatDoubleRoundTrips) {
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 0.77184451, 123456789.0}) {
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Config, LoadsFiles) {
    const auto path = std::filesystem::temp_directory_path() / "eppflags_config_test.cfg";
    {
        std::ofstream out(path);
        out << "seed = 42\n";
    }
    EXPECT_EQ(Config::load(path.string()).get_uint("seed", 0), 42u);
    std::filesystem::remove(path);
    EXPECT_THROW(Config::load(path.string()), ConfigError);
}

}  // namespace
}  // namespace eppflags
