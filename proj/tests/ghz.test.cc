// Copyright 2026 The mdiqss Authors.
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

#include "mdiqss/ghz.h"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

using namespace mdiqss;

using namespace oracle;

TEST(ghz, label_fields) {
    auto label = GhzLabel::parse("110");
    EXPECT_EQ(label.width(), 3);
    EXPECT_EQ(label.bits(), 6u);
    EXPECT_EQ(label.symbol(0), 1);
    EXPECT_EQ(label.symbol(2), 0);
    EXPECT_EQ(label.prefix(), 3u);
    EXPECT_EQ(label.phase_bit(), 0);
    EXPECT_EQ(label.to_string(), "110");
    EXPECT_FALSE(label.linear_optics_identifiable());
    EXPECT_TRUE(GhzLabel::parse("001").linear_optics_identifiable());
    EXPECT_TRUE(GhzLabel::parse("0000").linear_optics_identifiable());
    EXPECT_THROW(GhzLabel::parse("0a1"), std::invalid_argument);
    EXPECT_THROW(GhzLabel(3, 8), std::invalid_argument);
}

TEST(ghz, photon_count_bounds) {
    EXPECT_THROW(check_ghz_photon_count(1), std::out_of_range);
    EXPECT_NO_THROW(check_ghz_photon_count(2));
    EXPECT_NO_THROW(check_ghz_photon_count(14));
    EXPECT_THROW(check_ghz_photon_count(15), std::out_of_range);
    EXPECT_THROW(ghz_basis(1), std::out_of_range);
}

TEST(ghz, three_photon_states_match_definition) {
    // Phi_000 = (|000> + |111>)/sqrt2 ... Phi_111 = (|011> - |100>)/sqrt2
    const std::map<std::string, std::pair<int, int>> support = {
        {"000", {0, 7}}, {"001", {0, 7}}, {"010", {1, 6}}, {"011", {1, 6}},
        {"100", {2, 5}}, {"101", {2, 5}}, {"110", {3, 4}}, {"111", {3, 4}},
    };
    for (const auto& [text, pair] : support) {
        auto s = ghz_state(GhzLabel::parse(text));
        const double sign = text.back() == '1' ? -1 : 1;
        for (int k = 0; k < 8; k++) {
            Amplitude want = k == pair.first ? r : (k == pair.second ? sign * r : 0);
            EXPECT_NEAR(std::abs(s[static_cast<std::size_t>(k)] - want), 0, 1e-12) << text << " index " << k;
        }
    }
}

TEST(ghz, basis_is_orthonormal) {
    for (int m = 2; m <= 6; m++) {
        auto basis = ghz_basis(m);
        ASSERT_EQ(basis.size(), std::size_t{1} << m);
        for (std::size_t a = 0; a < basis.size(); a++) {
            for (std::size_t b = 0; b < basis.size(); b++) {
                EXPECT_NEAR(std::abs(inner_product(basis[a], basis[b])), a == b ? 1 : 0, 1e-12);
            }
        }
    }
}

TEST(ghz, frozen_three_photon_expansions) {
    ASSERT_EQ(kFrozenExpansions.size(), 32u);
    for (const auto& e : kFrozenExpansions) {
        auto want = frozen_coefficients(e);
        auto spec = ProductStateSpec::parse(std::string_view(e.state));
        auto d = decompose_in_ghz_basis(spec.state());
        for (std::uint32_t b = 0; b < 8; b++) {
            GhzLabel label(3, b);
            auto it = want.find(label.to_string());
            Amplitude expected = it == want.end() ? Amplitude(0) : it->second;
            EXPECT_LT(std::abs(d.at(label) - expected), 1e-9) << e.state << " " << label.to_string();
            EXPECT_LT(std::abs(ghz_coefficient(spec, label) - expected), 1e-9) << e.state << " " << label.to_string();
        }
    }
}

TEST(ghz, odd_y_count_example) {
    // |+y+x+x> = [(1+i)(Phi_000 + Phi_010 + Phi_100 + Phi_110)
    //            + (1-i)(Phi_001 + Phi_011 + Phi_101 + Phi_111)] / 4
    auto spec = ProductStateSpec::parse(std::string_view("+y+x+x"));
    auto d = decompose_in_ghz_basis(spec.state());
    for (std::uint32_t b = 0; b < 8; b++) {
        GhzLabel label(3, b);
        Amplitude want = label.phase_bit() ? Amplitude(0.25, -0.25) : Amplitude(0.25, 0.25);
        EXPECT_LT(std::abs(d.at(label) - want), 1e-9) << label.to_string();
    }
}

TEST(ghz, decomposition_matches_explicit_overlaps) {
    for (int m = 2; m <= 5; m++) {
        for (const auto& spec : all_product_specs(m)) {
            auto d = decompose_in_ghz_basis(spec.state());
            auto psi = product(spec.to_string());
            for (std::uint32_t b = 0; b < (1u << m); b++) {
                GhzLabel label(m, b);
                Amplitude want = dot(ghz_vector(label.to_string()), psi);
                ASSERT_LT(std::abs(d.at(label) - want), 1e-9) << spec.to_string() << " " << label.to_string();
                ASSERT_LT(std::abs(ghz_coefficient(spec, label) - want), 1e-9);
            }
            ASSERT_TRUE(d.reconstruct().approx_equal(spec.state()));
        }
    }
}

TEST(ghz, prefix_exclusivity_for_even_y_count) {
    int even = 0;
    for (const auto& spec : all_product_specs(3)) {
        auto d = decompose_in_ghz_basis(spec.state());
        auto support = d.support();
        if (spec.y_count() % 2 == 0) {
            even++;
            EXPECT_EQ(support.size(), 4u) << spec.to_string();
            for (std::uint32_t prefix = 0; prefix < 4; prefix++) {
                const bool has0 = std::abs(d.at(GhzLabel(3, prefix << 1))) > 1e-9;
                const bool has1 = std::abs(d.at(GhzLabel(3, (prefix << 1) | 1))) > 1e-9;
                EXPECT_NE(has0, has1) << spec.to_string() << " prefix " << prefix;
            }
        } else {
            EXPECT_EQ(support.size(), 8u) << spec.to_string();
        }
        for (const auto& label : support) {
            const double w = std::norm(d.at(label));
            EXPECT_NEAR(w, spec.y_count() % 2 == 0 ? 0.25 : 0.125, 1e-12);
        }
    }
    EXPECT_EQ(even, 32);
}

TEST(ghz, allowed_label_set_matches_support) {
    for (const auto& spec : all_product_specs(4)) {
        auto allowed = allowed_label_set(spec);
        EXPECT_EQ(allowed, decompose_in_ghz_basis(spec.state()).support());
        EXPECT_EQ(allowed.size(), spec.y_count() % 2 == 0 ? 8u : 16u);
    }
}

TEST(ghz, decomposition_checks_normalization) {
    EXPECT_THROW(Decomposition(2, {1, 1, 0, 0}), std::invalid_argument);
    EXPECT_THROW(Decomposition(2, {1, 0, 0}), std::invalid_argument);
}

TEST(ghz, spec_parsing) {
    auto a = ProductStateSpec::parse(std::string_view("+x-y+x"));
    const std::vector<std::string> tokens = {"+x", "-y", "+x"};
    auto b = ProductStateSpec::parse(tokens);
    EXPECT_EQ(a.to_string(), "+x-y+x");
    EXPECT_EQ(b.to_string(), "+x-y+x");
    EXPECT_EQ(a.y_count(), 1);
    EXPECT_EQ(a.minus_count(), 1);
    EXPECT_THROW(ProductStateSpec::parse(std::string_view("+x+z")), std::invalid_argument);
    EXPECT_THROW(ProductStateSpec({}), std::invalid_argument);
    EXPECT_EQ(all_product_specs(3).size(), 64u);
    EXPECT_EQ(all_product_specs(3).front().to_string(), "+x+x+x");
    EXPECT_EQ(all_product_specs(3).back().to_string(), "-y-y-y");
}

TEST(ghz, click_patterns) {
    auto to_strings = [](const std::vector<ClickPattern>& ps) {
        std::vector<std::string> out;
        for (const auto& p : ps) {
            out.push_back(p.to_string());
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    EXPECT_EQ(to_strings(click_patterns_for(GhzLabel::parse("000"))),
              (std::vector<std::string>{"000", "011", "101", "110"}));
    EXPECT_EQ(to_strings(click_patterns_for(GhzLabel::parse("001"))),
              (std::vector<std::string>{"001", "010", "100", "111"}));
    EXPECT_THROW(click_patterns_for(GhzLabel::parse("010")), std::invalid_argument);
}

TEST(ghz, linear_optics_success_probability) {
    for (const auto& spec : all_product_specs(3)) {
        EXPECT_NEAR(linear_optics_success_probability(spec.state()), 0.25, 1e-12) << spec.to_string();
    }
    for (int m = 4; m <= 6; m++) {
        for (const auto& spec : all_product_specs(m)) {
            ASSERT_NEAR(linear_optics_success_probability(spec.state()), std::ldexp(1.0, -(m - 1)), 1e-12);
        }
    }
}

TEST(ghz, linear_optics_sampling) {
    RandomStream rng(21);
    auto state = ProductStateSpec::parse(std::string_view("+x+x+x")).state();
    const int n = 40000;
    int ok = 0;
    std::map<std::string, int> clicks;
    for (int k = 0; k < n; k++) {
        auto o = analyze_linear_optics(state, rng);
        if (o.succeeded()) {
            ok++;
            ASSERT_EQ(o.label().to_string(), "000");
            ASSERT_EQ(o.clicks().parity(), 0);
            clicks[o.clicks().to_string()]++;
        } else {
            EXPECT_THROW(o.label(), std::logic_error);
        }
    }
    // p = 1/4, sigma = sqrt(n p (1-p)) ~ 86.6
    EXPECT_NEAR(ok, n / 4, 3 * 86.6);
    ASSERT_EQ(clicks.size(), 4u);
    for (const auto& [pattern, count] : clicks) {
        // each pattern 1/4 of the successes; sigma ~ 43
        EXPECT_NEAR(count, ok / 4, 3 * 43.3) << pattern;
    }
}

TEST(ghz, ideal_analyzer_reports_support_only) {
    RandomStream rng(2);
    auto spec = ProductStateSpec::parse(std::string_view("+x-y-y"));
    auto allowed = allowed_label_set(spec);
    for (int k = 0; k < 500; k++) {
        auto label = analyze_ideal(spec.state(), rng);
        ASSERT_TRUE(std::find(allowed.begin(), allowed.end(), label) != allowed.end());
    }
}

TEST(ghz, sample_index_follows_weights) {
    RandomStream rng(4);
    const double p[] = {0.1, 0.0, 0.6, 0.3};
    std::vector<int> counts(4);
    const int n = 20000;
    for (int k = 0; k < n; k++) {
        counts[sample_index(p, rng)]++;
    }
    EXPECT_EQ(counts[1], 0);
    // sigma for p = 0.6 is sqrt(n 0.24) ~ 69
    EXPECT_NEAR(counts[2], 0.6 * n, 3 * 69.3);
}

TEST(ghz, worked_collapse_examples) {
    // Phi_000 announced, receivers +x +x: the retained photon is -x.
    const Eigenstate xx[] = {parse_eigenstate("+x"), parse_eigenstate("+x")};
    EXPECT_EQ(collapse_reference(GhzLabel::parse("000"), xx), parse_eigenstate("-x"));
    EXPECT_EQ(predict_collapse(GhzLabel::parse("000"), xx, CrossCheck::Assert), parse_eigenstate("-x"));
    // Phi_001 announced, receivers +x -y: +y (alpha - 2 gamma = 1 row).
    const Eigenstate xy[] = {parse_eigenstate("+x"), parse_eigenstate("-y")};
    EXPECT_EQ(predict_collapse(GhzLabel::parse("001"), xy, CrossCheck::Assert), parse_eigenstate("+y"));
}

TEST(ghz, reference_collapse_matches_direct_contraction) {
    for (int n = 2; n <= 4; n++) {
        for (const auto& spec : all_product_specs(n)) {
            std::vector<Eigenstate> rx(spec.photons().begin(), spec.photons().end());
            for (std::uint32_t b = 0; b < (1u << (n + 1)); b++) {
                GhzLabel label(n + 1, b);
                ASSERT_EQ(collapse_reference(label, rx), contract(label.to_string(), rx))
                    << label.to_string() << " " << spec.to_string();
            }
        }
    }
}

TEST(ghz, tables_agree_with_projection_on_identifiable_labels) {
    int cases = 0;
    for (const char* text : {"000", "001"}) {
        for (auto a : kXYEigenstates) {
            for (auto b : kXYEigenstates) {
                const Eigenstate rx[] = {a, b};
                auto label = GhzLabel::parse(text);
                EXPECT_EQ(collapse_by_table(label, rx), collapse_reference(label, rx))
                    << text << " " << to_string(a) << to_string(b);
                cases++;
            }
        }
    }
    EXPECT_EQ(cases, 32);
}

TEST(ghz, tables_extend_to_every_label) {
    for (std::uint32_t bits = 0; bits < 8; bits++) {
        GhzLabel label(3, bits);
        for (auto a : kXYEigenstates) {
            for (auto b : kXYEigenstates) {
                const Eigenstate rx[] = {a, b};
                EXPECT_EQ(collapse_by_table(label, rx), collapse_reference(label, rx))
                    << label.to_string() << " " << to_string(a) << to_string(b);
            }
        }
    }
}

TEST(ghz, collapse_basis_follows_receiver_y_parity) {
    // X-basis retained photon when the receivers' Y count is even, Y when odd.
    for (auto a : kXYEigenstates) {
        for (auto b : kXYEigenstates) {
            const Eigenstate rx[] = {a, b};
            const int alpha = (a.basis == PauliBasis::Y) + (b.basis == PauliBasis::Y);
            auto got = collapse_reference(GhzLabel::parse("000"), rx);
            EXPECT_EQ(got.basis, alpha % 2 == 0 ? PauliBasis::X : PauliBasis::Y);
        }
    }
}

TEST(ghz, phase_labels_give_opposite_collapse) {
    for (auto a : kXYEigenstates) {
        for (auto b : kXYEigenstates) {
            const Eigenstate rx[] = {a, b};
            EXPECT_EQ(collapse_reference(GhzLabel::parse("001"), rx),
                      flipped(collapse_reference(GhzLabel::parse("000"), rx)));
        }
    }
}

TEST(ghz, predict_collapse_rejects_unreportable_labels) {
    const Eigenstate rx[] = {parse_eigenstate("+x"), parse_eigenstate("+x")};
    EXPECT_THROW(predict_collapse(GhzLabel::parse("010"), rx), std::invalid_argument);
    const Eigenstate bad[] = {parse_eigenstate("+z"), parse_eigenstate("+x")};
    EXPECT_THROW(collapse_reference(GhzLabel::parse("000"), bad), std::invalid_argument);
}

TEST(ghz, multiparty_weights_exhaustive_three_receivers) {
    for (const auto& spec : all_product_specs(4)) {
        auto d = decompose_in_ghz_basis(spec.state());
        auto support = d.support();
        const bool even = spec.y_count() % 2 == 0;
        ASSERT_EQ(support.size(), even ? 8u : 16u) << spec.to_string();
        for (const auto& label : support) {
            ASSERT_NEAR(std::norm(d.at(label)), even ? 1.0 / 8 : 1.0 / 16, 1e-12);
        }
    }
}

TEST(ghz, multiparty_forms_agree) {
    for (int m = 2; m <= 5; m++) {
        for (const auto& spec : all_product_specs(m)) {
            auto direct = multiparty_product_state(spec);
            ASSERT_TRUE(direct.approx_equal(spec.state()));
            ASSERT_TRUE(product_state_from_counters(spec).approx_equal(direct)) << spec.to_string();
            ASSERT_TRUE(product_state_from_complements(spec).approx_equal(direct)) << spec.to_string();
            ASSERT_TRUE(product_state_paired(spec).approx_equal(direct)) << spec.to_string();
        }
    }
}

TEST(ghz, component_counters_example) {
    // +y -x +y: component |101> has two Y photons reading 1 and no minus photon
    // reading 1; |010> has the -x photon reading 1.
    auto spec = ProductStateSpec::parse(std::string_view("+y-x+y"));
    auto cs = component_counters(spec);
    ASSERT_EQ(cs.size(), 8u);
    EXPECT_EQ(cs[5].gamma, 2);
    EXPECT_EQ(cs[5].eta, 0);
    EXPECT_EQ(cs[2].gamma, 0);
    EXPECT_EQ(cs[2].eta, 1);
}
