#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bifold/actions.hpp"
#include "bifold/records.hpp"
#include "bifold/rng.hpp"
#include "bifold/semantics.hpp"

namespace bifold {

enum class ActionKind { Sleeve, Refine, Fold };

std::string_view to_string(ActionKind k);
std::optional<ActionKind> action_kind_from_string(std::string_view s);

// Sleeve picks are their own family; otherwise identical pick and place
// locations mean the action only tidies that part.
ActionKind classify_action(const SemanticLabel& pick, const SemanticLabel& place);

// Three template families. Sleeve templates take {which}; refinement
// templates take {which} and {garment}; fold templates take {garment},
// {which1} and {which2}.
struct TemplateBank {
    std::vector<std::string> sleeve;
    std::vector<std::string> refine;
    std::vector<std::string> fold;

    const std::vector<std::string>& family(ActionKind k) const;

    static const TemplateBank& builtin();
    static TemplateBank load(const std::filesystem::path& path);
};

void validate_bank(const TemplateBank& bank);

// Maps a garment category to the word used inside instructions.
std::string garment_surface_form(GarmentCategory g, bool capitalized);

struct InstructionRecord {
    ActionKind kind = ActionKind::Fold;
    int template_index = 0;
    std::string text;
    std::optional<Hand> single_arm;
};

// Renders one specific template. single_arm appends the arm suffix before
// the final period.
InstructionRecord render_template(const TemplateBank& bank, ActionKind kind,
                                  int template_index, const std::string& garment_form,
                                  const SemanticLabel& pick, const SemanticLabel& place,
                                  std::optional<Hand> single_arm);

// Uniformly picks a template of the family and renders it.
InstructionRecord instantiate(const TemplateBank& bank, ActionKind kind,
                              const std::string& garment_form,
                              const SemanticLabel& pick, const SemanticLabel& place,
                              std::optional<Hand> single_arm, Rng& rng);

}  // namespace bifold
