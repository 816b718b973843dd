#pragma once

#include <string>
#include <vector>

namespace golden {

struct Case {
    std::string name;
    std::vector<std::string> args;
    int expected_exit;
};

inline std::string data(const std::string& file) { return std::string(WEYL_TEST_DATA_DIR) + "/" + file; }

inline std::vector<Case> cases() {
    return {
        {"mul_weyl_relation", {"mul", "-s", data("w100.sig"), "d1", "t1"}, 0},
        {"mul_second_order", {"mul", "-s", data("w100.sig"), "d1^2", "t1"}, 0},
        {"bracket_weyl_relation", {"bracket", "-s", data("w100.sig"), "d1", "t1"}, 0},
        {"bracket_x_eigen", {"bracket", "-s", data("w110_2z.sig"), "d2", "x[2]"}, 0},
        {"analyze_nilpotent", {"analyze", "-s", data("w110_2z.sig"), "x[2] + t1"}, 0},
        {"analyze_finite", {"analyze", "-s", data("w110_2z.sig"), "d2"}, 0},
        {"analyze_unbounded", {"analyze", "-s", data("w110_2z.sig"), "t1*d2", "--steps", "6"}, 0},
        {"classify_inequivalent", {"classify", data("qs2_a.sig"), data("qs2_b.sig"), "--radius", "3"}, 0},
        {"classify_equivalent", {"classify", data("w110_2z.sig"), data("w110_z.sig"), "--radius", "3"}, 0},
        {"classify_undecided", {"classify", data("qs2_c.sig"), data("qs2_d.sig"), "--radius", "0"}, 3},
    };
}

} // namespace golden
