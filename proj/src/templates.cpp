#include "bifold/templates.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "bifold/errors.hpp"

namespace bifold {

std::string_view to_string(ActionKind k) {
    switch (k) {
        case ActionKind::Sleeve: return "sleeve";
        case ActionKind::Refine: return "refine";
        case ActionKind::Fold: return "fold";
    }
    return "fold";
}

std::optional<ActionKind> action_kind_from_string(std::string_view s) {
    if (s == "sleeve") return ActionKind::Sleeve;
    if (s == "refine") return ActionKind::Refine;
    if (s == "fold") return ActionKind::Fold;
    return std::nullopt;
}

ActionKind classify_action(const SemanticLabel& pick, const SemanticLabel& place) {
    if (pick.sleeve) return ActionKind::Sleeve;
    if (pick.same_location(place)) return ActionKind::Refine;
    return ActionKind::Fold;
}

const std::vector<std::string>& TemplateBank::family(ActionKind k) const {
    switch (k) {
        case ActionKind::Sleeve: return sleeve;
        case ActionKind::Refine: return refine;
        case ActionKind::Fold: return fold;
    }
    return fold;
}

const TemplateBank& TemplateBank::builtin() {
    static const TemplateBank bank = [] {
        TemplateBank b;
        b.sleeve = {
            "Fold the {which} sleeve towards the inside.",
            "Inwardly fold the {which} sleeve.",
            "Fold the {which} sleeve towards the body.",
            "Bend the {which} sleeve towards the inside.",
            "Fold the {which} sleeve to the center.",
            "Fold the {which} sleeve towards the middle.",
            "Bring the {which} sleeve to the center.",
            "Fold the {which} sleeve inward to the halfway point.",
            "Tuck the {which} sleeve towards the center.",
            "Meet the {which} sleeve at the center.",
            "Fold the {which} sleeve to the midpoint.",
            "Center the {which} sleeve.",
            "Align the {which} sleeve to the center.",
            "Fold the {which} sleeve to the axis.",
            "Bring the {which} sleeve to the median.",
            "Fold the {which} sleeve to the central point.",
            "Fold the {which} sleeve towards the midpoint of the shirt.",
            "Bring the {which} sleeve to the center seam.",
            "Fold the {which} sleeve to the centerline of the shirt.",
            "Fold the {which} sleeve to the centerline of the shirt.",
        };
        b.refine = {
            "Fold the {which} part of the {garment} neatly.",
            "Align the {which} part of the {garment} properly.",
            "Arrange the {which} part of the {garment} neatly.",
            "Straighten out the {which} part of the {garment}.",
            "Place the {which} part of the {garment} in the correct position.",
            "Ensure the {which} part of the {garment} is well-positioned.",
        };
        b.fold = {
            "Fold the {garment} in half, {which1} to {which2}.",
            "Fold the {garment} from the {which1} side towards the {which2} side.",
            "Fold the {garment} in half, starting from the {which1} and ending at the {which2}.",
            "Fold the {garment}, {which1} side over {which2} side.",
            "Bend the {garment} in half, from {which1} to {which2}.",
            "Fold the {garment}, making sure the {which1} side touches the {which2} side.",
            "Fold the {garment}, bringing the {which1} side to meet the {which2} side.",
            "Crease the {garment} down the middle, from {which1} to {which2}.",
            "Fold the {garment} in half horizontally, {which1} to {which2}.",
            "Make a fold in the {garment}, starting from the {which1} and ending at the {which2}.",
            "Fold the {garment} in half, aligning the {which1} and {which2} sides.",
            "Fold the {garment}, ensuring the {which1} side meets the {which2} side.",
            "Fold the {garment}, orientating from the {which1} towards the {which2}.",
            "Fold the {garment} cleanly, from the {which1} side to the {which2} side.",
            "Fold the {garment} in half, with the {which1} side overlapping the {which2}.",
            "Create a fold in the {garment}, going from {which1} to {which2}.",
            "Bring the {which1} side of the {garment} towards the {which2} side and fold them in half.",
            "Fold the waistband of the {garment} in half, from {which1} to {which2}.",
            "Fold the {garment} neatly, from the {which1} side to the {which2} side.",
            "Fold the {garment}, making a crease from the {which1} to the {which2}.",
            "Fold the {garment} in half, from {which1} to {which2}.",
        };
        validate_bank(b);
        return b;
    }();
    return bank;
}

namespace {

bool placeholder_allowed(ActionKind kind, std::string_view name) {
    switch (kind) {
        case ActionKind::Sleeve: return name == "which";
        case ActionKind::Refine: return name == "which" || name == "garment";
        case ActionKind::Fold:
            return name == "garment" || name == "which1" || name == "which2";
    }
    return false;
}

void check_template(ActionKind kind, const std::string& tpl) {
    std::size_t pos = 0;
    while ((pos = tpl.find('{', pos)) != std::string::npos) {
        const std::size_t end = tpl.find('}', pos);
        if (end == std::string::npos)
            throw TemplateError("unterminated placeholder in template: " + tpl);
        const std::string name = tpl.substr(pos + 1, end - pos - 1);
        if (!placeholder_allowed(kind, name))
            throw TemplateError("unknown placeholder {" + name + "} in " +
                                std::string(to_string(kind)) + " template: " + tpl);
        pos = end + 1;
    }
    if (tpl.find('}') != std::string::npos && tpl.find('{') == std::string::npos)
        throw TemplateError("stray brace in template: " + tpl);
}

std::string replace_all(std::string text, std::string_view from, std::string_view to) {
    std::size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
        text.replace(pos, from.size(), to);
        pos += to.size();
    }
    return text;
}

}  // namespace

void validate_bank(const TemplateBank& bank) {
    for (const auto& [kind, fam] : {std::pair{ActionKind::Sleeve, &bank.sleeve},
                                    std::pair{ActionKind::Refine, &bank.refine},
                                    std::pair{ActionKind::Fold, &bank.fold}}) {
        if (fam->empty())
            throw TemplateError(std::string("empty template family: ") +
                                std::string(to_string(kind)));
        for (const std::string& tpl : *fam) check_template(kind, tpl);
    }
}

TemplateBank TemplateBank::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw TemplateError("cannot open template bank: " + path.string());
    TemplateBank bank;
    std::vector<std::string>* section = nullptr;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line == "[sleeve]") {
            section = &bank.sleeve;
        } else if (line == "[refine]") {
            section = &bank.refine;
        } else if (line == "[fold]") {
            section = &bank.fold;
        } else if (line[0] == '[') {
            throw TemplateError("unknown section at line " + std::to_string(lineno) +
                                ": " + line);
        } else {
            if (!section)
                throw TemplateError("template before any section at line " +
                                    std::to_string(lineno));
            section->push_back(line);
        }
    }
    validate_bank(bank);
    return bank;
}

std::string garment_surface_form(GarmentCategory g, bool capitalized) {
    if (capitalized) return std::string(to_string(g));
    switch (g) {
        case GarmentCategory::Skirt: return "skirt";
        case GarmentCategory::Top: return "top";
        case GarmentCategory::Trousers: return "trousers";
        case GarmentCategory::Tshirt: return "tshirt";
    }
    return "skirt";
}

InstructionRecord render_template(const TemplateBank& bank, ActionKind kind,
                                  int template_index, const std::string& garment_form,
                                  const SemanticLabel& pick, const SemanticLabel& place,
                                  std::optional<Hand> single_arm) {
    const auto& family = bank.family(kind);
    if (template_index < 0 || static_cast<std::size_t>(template_index) >= family.size())
        throw TemplateError("template index out of range: " +
                            std::to_string(template_index));

    std::string text = family[static_cast<std::size_t>(template_index)];
    text = replace_all(std::move(text), "{garment}", garment_form);
    text = replace_all(std::move(text), "{which1}", pick.text());
    text = replace_all(std::move(text), "{which2}", place.text());
    text = replace_all(std::move(text), "{which}", pick.text());
    if (text.find('{') != std::string::npos || text.find('}') != std::string::npos)
        throw TemplateError("unexpanded placeholder in: " + text);

    if (single_arm) {
        // The suffix goes before the final period.
        if (!text.empty() && text.back() == '.') text.pop_back();
        text += " only using the ";
        text += to_string(*single_arm);
        text += " arm.";
    }

    return InstructionRecord{kind, template_index, std::move(text), single_arm};
}

InstructionRecord instantiate(const TemplateBank& bank, ActionKind kind,
                              const std::string& garment_form,
                              const SemanticLabel& pick, const SemanticLabel& place,
                              std::optional<Hand> single_arm, Rng& rng) {
    const auto& family = bank.family(kind);
    if (family.empty())
        throw TemplateError(std::string("empty template family: ") +
                            std::string(to_string(kind)));
    const int idx = static_cast<int>(rng.index(family.size()));
    return render_template(bank, kind, idx, garment_form, pick, place, single_arm);
}

}  // namespace bifold
