// fault_corpus.hpp -- crafted single-fault MiniC programs with known fault
// lines, used to measure diagnosis soundness, minimality, and recall.
#pragma once

#include <string>
#include <vector>

namespace testcorpus {

struct FaultProgram {
    const char* name;
    const char* source;      // the faulty program (fails its assertion)
    int fault_line;          // 1-based line of the injected fault
};

// Each program takes a correct implementation and alters exactly one
// statement (a flipped comparison, a duplicated assignment with +1, or a
// wrong constant/operator).
inline const std::vector<FaultProgram>& fault_corpus() {
    static const std::vector<FaultProgram> corpus = {
        {"sum_loop_cond",
         "int sum(int n) {\n"
         "    int s = 0;\n"
         "    for (int i = 1; i < n; i++) {\n"  // fault: <= flipped to <
         "        s += i;\n"
         "    }\n"
         "    return s;\n"
         "}\n"
         "int main() { assert(sum(4) == 10); return 0; }\n",
         3},
        {"max_flip",
         "int max2(int a, int b) {\n"
         "    if (a < b) {\n"  // fault: > flipped to <
         "        return a;\n"
         "    }\n"
         "    return b;\n"
         "}\n"
         "int main() { assert(max2(7, 3) == 7); return 0; }\n",
         2},
        {"abs_flip",
         "int myabs(int x) {\n"
         "    int r = x;\n"
         "    if (x > 0) {\n"  // fault: < flipped to >
         "        r = -x;\n"
         "    }\n"
         "    return r;\n"
         "}\n"
         "int main() { assert(myabs(-4) == 4); return 0; }\n",
         3},
        {"adc_counter",
         "int count(int n) {\n"
         "    int c = 0;\n"
         "    c = 0 + 1;\n"  // fault: duplicated assignment with constant
         "    for (int i = 0; i < n; i++) {\n"
         "        c += 2;\n"
         "    }\n"
         "    return c;\n"
         "}\n"
         "int main() { assert(count(3) == 6); return 0; }\n",
         3},
        {"gauss_formula",
         "int gauss(int n) {\n"
         "    return n * (n - 1) / 2;\n"  // fault: n+1 became n-1
         "}\n"
         "int main() { assert(gauss(6) == 21); return 0; }\n",
         2},
        {"parity",
         "int parity(int x) {\n"
         "    return x % 2 != 0;\n"  // fault: == became !=
         "}\n"
         "int main() { assert(parity(6) == 1); return 0; }\n",
         2},
        {"clamp_low",
         "int clamp(int x, int lo, int hi) {\n"
         "    int r = x;\n"
         "    if (x >= lo) {\n"  // fault: < became >=
         "        r = lo;\n"
         "    }\n"
         "    if (r > hi) {\n"
         "        r = hi;\n"
         "    }\n"
         "    return r;\n"
         "}\n"
         "int main() { assert(clamp(5, 1, 9) == 5); return 0; }\n",
         3},
        {"double_step",
         "int dbl(int n) {\n"
         "    int r = 0;\n"
         "    for (int i = 0; i < n; i++) {\n"
         "        r += 1;\n"  // fault: += 2 became += 1
         "    }\n"
         "    return r;\n"
         "}\n"
         "int main() { assert(dbl(5) == 10); return 0; }\n",
         4},
        {"min_ternary",
         "int min2(int a, int b) {\n"
         "    return (a > b) ? a : b;\n"  // fault: < became >
         "}\n"
         "int main() { assert(min2(3, 8) == 3); return 0; }\n",
         2},
        {"adc_seed",
         "int scale(int x) {\n"
         "    int base = 10;\n"
         "    base = 10 + 1;\n"  // fault: duplicated assignment
         "    return base * x;\n"
         "}\n"
         "int main() { assert(scale(3) == 30); return 0; }\n",
         3},
        {"count_even",
         "int evens(int n) {\n"
         "    int c = 0;\n"
         "    for (int i = 0; i <= n; i++) {\n"
         "        if (i % 2 != 0) {\n"  // fault: == became !=
         "            c++;\n"
         "        }\n"
         "    }\n"
         "    return c;\n"
         "}\n"
         "int main() { assert(evens(6) == 4); return 0; }\n",
         4},
        {"power_base",
         "int pow2(int n) {\n"
         "    int p = 2;\n"  // fault: initial value 1 became 2
         "    for (int i = 0; i < n; i++) {\n"
         "        p *= 2;\n"
         "    }\n"
         "    return p;\n"
         "}\n"
         "int main() { assert(pow2(4) == 16); return 0; }\n",
         2},
        {"sum_digits",
         "int digits(int x) {\n"
         "    int s = 0;\n"
         "    while (x > 0) {\n"
         "        s += x % 10;\n"
         "        x = x / 100;\n"  // fault: 10 became 100
         "    }\n"
         "    return s;\n"
         "}\n"
         "int main() { assert(digits(123) == 6); return 0; }\n",
         5},
        {"neg_guard",
         "int sign(int x) {\n"
         "    int r = 0;\n"
         "    if (x > 0) {\n"
         "        r = 1;\n"
         "    }\n"
         "    if (x >= 0) {\n"  // fault: < became >=
         "        r = -1;\n"
         "    }\n"
         "    return r;\n"
         "}\n"
         "int main() { assert(sign(5) == 1); return 0; }\n",
         6},
        {"sum_to_four",
         "int main() {\n"
         "    int s = 0;\n"
         "    int i = 0;\n"
         "    while (i <= 4) {\n"
         "        s = s + f(i);\n"
         "        i = i + 1;\n"
         "    }\n"
         "    assert(s == 8);\n"
         "    return 0;\n"
         "}\n"
         "int f(int x) { return x - 1; }\n",  // fault: x+1 became x-1
         11},
        {"mod_wrap",
         "int wrap(int x, int m) {\n"
         "    int r = x % m;\n"
         "    if (r > 0) {\n"  // fault: < became >
         "        r += m;\n"
         "    }\n"
         "    return r;\n"
         "}\n"
         "int main() { assert(wrap(-3, 5) == 2); return 0; }\n",
         3},
        {"diff_abs",
         "int dist(int a, int b) {\n"
         "    int d = a + b;\n"  // fault: - became +
         "    return abs(d);\n"
         "}\n"
         "int main() { assert(dist(3, 9) == 6); return 0; }\n",
         2},
        {"adc_loop_acc",
         "int tri(int n) {\n"
         "    int t = 0;\n"
         "    for (int i = 1; i <= n; i++) {\n"
         "        t += i;\n"
         "        t = t + 1;\n"  // fault: duplicated accumulate with constant
         "    }\n"
         "    return t;\n"
         "}\n"
         "int main() { assert(tri(4) == 10); return 0; }\n",
         5},
        {"string_count",
         "int countL(const char* s) {\n"
         "    int c = 0;\n"
         "    for (int i = 0; s[i] != 0; i++) {\n"
         "        if (s[i] != 'L') {\n"  // fault: == became !=
         "            c++;\n"
         "        }\n"
         "    }\n"
         "    return c;\n"
         "}\n"
         "int main() { assert(countL(\"LXLL\") == 3); return 0; }\n",
         4},
        {"bit_and_or",
         "int merge(int a, int b) {\n"
         "    return a & b;\n"  // fault: | became &
         "}\n"
         "int main() { assert(merge(5, 2) == 7); return 0; }\n",
         2},
        {"step_two",
         "int halves(int n) {\n"
         "    int c = 0;\n"
         "    while (n >= 1) {\n"
         "        n = n / 2;\n"
         "        c += 2;\n"  // fault: += 1 became += 2
         "    }\n"
         "    return c;\n"
         "}\n"
         "int main() { assert(halves(8) == 4); return 0; }\n",
         5},
        {"shift_vs_mul",
         "int times8(int x) {\n"
         "    return x << 2;\n"  // fault: << 3 became << 2
         "}\n"
         "int main() { assert(times8(3) == 24); return 0; }\n",
         2},
        {"boundary",
         "int inRange(int x) {\n"
         "    return x >= 10 && x < 20;\n"  // fault: <= 20 became < 20 with boundary test
         "}\n"
         "int main() { assert(inRange(20) == 1); return 0; }\n",
         2},
    };
    return corpus;
}

}  // namespace testcorpus
