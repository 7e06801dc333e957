#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "bifold/errors.hpp"
#include "bifold/rng.hpp"
#include "bifold/templates.hpp"

using namespace bifold;
namespace fs = std::filesystem;

namespace {

SemanticLabel horizontal_label(Horizontal h, bool sleeve = false) {
    SemanticLabel l;
    l.horizontal = h;
    l.sleeve = sleeve;
    return l;
}

SemanticLabel vertical_label(Vertical v) {
    SemanticLabel l;
    l.vertical = v;
    return l;
}

}  // namespace

TEST_SUITE_BEGIN("templates");

TEST_CASE("classify_action separates the three families") {
    const SemanticLabel left_sleeve = horizontal_label(Horizontal::Left, true);
    const SemanticLabel left = horizontal_label(Horizontal::Left);
    const SemanticLabel right = horizontal_label(Horizontal::Right);
    const SemanticLabel top = vertical_label(Vertical::Top);

    CHECK(classify_action(left_sleeve, right) == ActionKind::Sleeve);
    CHECK(classify_action(top, top) == ActionKind::Refine);
    CHECK(classify_action(left, right) == ActionKind::Fold);
    CHECK(classify_action(top, right) == ActionKind::Fold);
}

TEST_CASE("builtin bank has the documented family sizes") {
    const TemplateBank& bank = TemplateBank::builtin();
    CHECK(bank.sleeve.size() == 20);
    CHECK(bank.refine.size() == 6);
    CHECK(bank.fold.size() == 21);
    validate_bank(bank);

    // Each family must route through TemplateBank::family.
    CHECK(&bank.family(ActionKind::Sleeve) == &bank.sleeve);
    CHECK(&bank.family(ActionKind::Refine) == &bank.refine);
    CHECK(&bank.family(ActionKind::Fold) == &bank.fold);
}

TEST_CASE("garment_surface_form maps categories to words") {
    CHECK(garment_surface_form(GarmentCategory::Skirt, false) == "skirt");
    CHECK(garment_surface_form(GarmentCategory::Top, false) == "top");
    CHECK(garment_surface_form(GarmentCategory::Trousers, false) == "trousers");
    CHECK(garment_surface_form(GarmentCategory::Tshirt, false) == "tshirt");
    CHECK(garment_surface_form(GarmentCategory::Skirt, true) == "Skirt");
    CHECK(garment_surface_form(GarmentCategory::Tshirt, true) == "Tshirt");
}

TEST_CASE("render_template reproduces the three reference strings") {
    const TemplateBank& bank = TemplateBank::builtin();

    const InstructionRecord sleeve = render_template(
        bank, ActionKind::Sleeve, 0, "tshirt", horizontal_label(Horizontal::Right, true),
        horizontal_label(Horizontal::Left), std::nullopt);
    CHECK(sleeve.text == "Fold the right sleeve towards the inside.");

    const InstructionRecord fold = render_template(
        bank, ActionKind::Fold, 20, "Skirt", horizontal_label(Horizontal::Left),
        horizontal_label(Horizontal::Right), std::nullopt);
    CHECK(fold.text == "Fold the Skirt in half, from left to right.");

    const InstructionRecord refine = render_template(
        bank, ActionKind::Refine, 5, "Top", vertical_label(Vertical::Bottom),
        vertical_label(Vertical::Bottom), std::nullopt);
    CHECK(refine.text == "Ensure the bottom part of the Top is well-positioned.");
}

TEST_CASE("render_template inserts the single-arm suffix before the period") {
    const TemplateBank& bank = TemplateBank::builtin();
    const InstructionRecord left = render_template(
        bank, ActionKind::Fold, 20, "trousers", horizontal_label(Horizontal::Left),
        horizontal_label(Horizontal::Right), Hand::Left);
    CHECK(left.text ==
          "Fold the trousers in half, from left to right only using the left arm.");
    CHECK(left.single_arm == Hand::Left);

    const InstructionRecord right = render_template(
        bank, ActionKind::Sleeve, 0, "tshirt", horizontal_label(Horizontal::Right, true),
        horizontal_label(Horizontal::Left), Hand::Right);
    CHECK(right.text ==
          "Fold the right sleeve towards the inside only using the right arm.");
}

TEST_CASE("render_template validates index and expansion") {
    const TemplateBank& bank = TemplateBank::builtin();
    CHECK_THROWS_WITH_AS(
        render_template(bank, ActionKind::Refine, 6, "top",
                        vertical_label(Vertical::Top), vertical_label(Vertical::Top),
                        std::nullopt),
        "template index out of range: 6", TemplateError);

    // A fold template rendered with an empty pick label leaves nothing to
    // substitute but still expands; an empty-text label is not an error at
    // this layer. Unexpanded braces, however, are.
    TemplateBank custom = bank;
    custom.fold[0] = "Fold the {garment} in half.";
    const InstructionRecord ok = render_template(
        custom, ActionKind::Fold, 0, "skirt", horizontal_label(Horizontal::Left),
        horizontal_label(Horizontal::Right), std::nullopt);
    CHECK(ok.text == "Fold the skirt in half.");
}

TEST_CASE("validate_bank rejects malformed template sets") {
    TemplateBank empty_family = TemplateBank::builtin();
    empty_family.refine.clear();
    CHECK_THROWS_WITH_AS(validate_bank(empty_family), "empty template family: refine",
                         TemplateError);

    TemplateBank unknown = TemplateBank::builtin();
    unknown.sleeve[0] = "Fold the {garment} sleeve.";
    CHECK_THROWS_WITH_AS(validate_bank(unknown),
                         "unknown placeholder {garment} in sleeve template: "
                         "Fold the {garment} sleeve.",
                         TemplateError);

    TemplateBank unterminated = TemplateBank::builtin();
    unterminated.fold[0] = "Fold the {garment in half.";
    CHECK_THROWS_WITH_AS(validate_bank(unterminated),
                         "unterminated placeholder in template: Fold the {garment in half.",
                         TemplateError);

    TemplateBank stray = TemplateBank::builtin();
    stray.fold[0] = "Fold the garment} in half.";
    CHECK_THROWS_WITH_AS(validate_bank(stray),
                         "stray brace in template: Fold the garment} in half.",
                         TemplateError);
}

TEST_CASE("bank files parse sections, comments and blank lines") {
    const fs::path path = fs::temp_directory_path() / "bifold_test_bank.txt";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "\n";
        out << "[sleeve]\n";
        out << "Fold the {which} sleeve.\n";
        out << "[refine]\n";
        out << "Tidy the {which} part of the {garment}.\r\n";
        out << "[fold]\n";
        out << "Fold the {garment}, {which1} to {which2}.\n";
    }
    const TemplateBank bank = TemplateBank::load(path);
    CHECK(bank.sleeve == std::vector<std::string>{"Fold the {which} sleeve."});
    CHECK(bank.refine ==
          std::vector<std::string>{"Tidy the {which} part of the {garment}."});
    CHECK(bank.fold ==
          std::vector<std::string>{"Fold the {garment}, {which1} to {which2}."});

    {
        std::ofstream out(path);
        out << "[sleeves]\n";
    }
    CHECK_THROWS_WITH_AS(TemplateBank::load(path), "unknown section at line 1: [sleeves]",
                         TemplateError);

    {
        std::ofstream out(path);
        out << "Fold the {which} sleeve.\n";
    }
    CHECK_THROWS_WITH_AS(TemplateBank::load(path), "template before any section at line 1",
                         TemplateError);

    CHECK_THROWS_AS(TemplateBank::load(fs::temp_directory_path() / "no_such_bank.txt"),
                    TemplateError);
}

TEST_CASE("the shipped bank file matches the builtin bank") {
    // The packaged template bank is located through the test environment;
    // when run without it, there is nothing to compare.
    const char* path = std::getenv("BIFOLD_BANK_FILE");
    if (!path || !*path) return;
    const TemplateBank bank = TemplateBank::load(path);
    CHECK(bank.sleeve == TemplateBank::builtin().sleeve);
    CHECK(bank.refine == TemplateBank::builtin().refine);
    CHECK(bank.fold == TemplateBank::builtin().fold);
}

TEST_CASE("instantiate draws uniformly over the family") {
    const TemplateBank& bank = TemplateBank::builtin();
    Rng rng(5);
    // The draw must mirror a plain index draw on a cloned stream.
    Rng clone(5);
    const std::size_t expected = clone.index(bank.fold.size());
    const InstructionRecord got = instantiate(
        bank, ActionKind::Fold, "skirt", horizontal_label(Horizontal::Left),
        horizontal_label(Horizontal::Right), std::nullopt, rng);
    CHECK(got.template_index == static_cast<int>(expected));
    CHECK(got.kind == ActionKind::Fold);

    // Over many draws every template of a small family appears.
    std::set<int> seen;
    for (int i = 0; i < 200; ++i) {
        const InstructionRecord r = instantiate(
            bank, ActionKind::Refine, "top", vertical_label(Vertical::Top),
            vertical_label(Vertical::Top), std::nullopt, rng);
        seen.insert(r.template_index);
    }
    CHECK(seen.size() == bank.refine.size());

    TemplateBank empty;
    CHECK_THROWS_WITH_AS(
        instantiate(empty, ActionKind::Sleeve, "tshirt",
                    horizontal_label(Horizontal::Left, true),
                    horizontal_label(Horizontal::Left), std::nullopt, rng),
        "empty template family: sleeve", TemplateError);
}

TEST_SUITE_END();
