#include "kr/serialize.hpp"

#include "kr/parser.hpp"

namespace kr {

namespace {

using nlohmann::json;

// json.at with toolkit errors instead of json exceptions.
const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw DomainError(std::string("artifact is missing field \"") + name + "\"");
    return *it;
}

std::string text_field(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_string()) throw DomainError(std::string("field \"") + name + "\" must be a string");
    return f.get<std::string>();
}

unsigned uint_field(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_number_unsigned()) throw DomainError(std::string("field \"") + name + "\" must be a nonnegative integer");
    return f.get<unsigned>();
}

json images_to_json(const std::array<Polynomial, 4>& im) {
    return json{{"x", to_text(im[0])},
                {"y", to_text(im[1])},
                {"z", to_text(im[2])},
                {"t", to_text(im[3])}};
}

std::array<Polynomial, 4> images_from_json(const json& j, const VarTablePtr& table) {
    return {parse_polynomial(text_field(j, "x"), table), parse_polynomial(text_field(j, "y"), table),
            parse_polynomial(text_field(j, "z"), table), parse_polynomial(text_field(j, "t"), table)};
}

json params_to_json(const RParams& p) {
    return json{{"d", p.d}, {"k", p.k}, {"l", p.l}};
}

RParams params_from_json(const json& j) {
    return RParams(uint_field(j, "d"), uint_field(j, "k"), uint_field(j, "l"));
}

void require_kind(const json& j, const char* kind) {
    if (text_field(j, "kind") != kind)
        throw DomainError(std::string("expected artifact kind \"") + kind + "\", got \"" +
                          text_field(j, "kind") + "\"");
}

} // namespace

json word_to_json(const AutWord& w) {
    json arr = json::array();
    for (const Generator& g : w.generators()) {
        if (const auto* zs = std::get_if<ZShear>(&g))
            arr.push_back(json{{"kind", "zshear"}, {"poly", to_text(zs->f)}});
        else if (const auto* ts = std::get_if<TShear>(&g))
            arr.push_back(json{{"kind", "tshear"}, {"poly", to_text(ts->g)}});
        else if (const auto* sc = std::get_if<Scale>(&g))
            arr.push_back(json{{"kind", "scale"}, {"a", to_string(sc->a)}, {"b", to_string(sc->b)}});
    }
    return arr;
}

AutWord word_from_json(const json& j, const VarTablePtr& table) {
    if (!j.is_array()) throw DomainError("word artifact must be an array of generator records");
    std::vector<Generator> gens;
    gens.reserve(j.size());
    for (const json& rec : j) {
        const std::string kind = text_field(rec, "kind");
        if (kind == "zshear")
            gens.push_back(ZShear{parse_polynomial(text_field(rec, "poly"), table)});
        else if (kind == "tshear")
            gens.push_back(TShear{parse_polynomial(text_field(rec, "poly"), table)});
        else if (kind == "scale")
            gens.push_back(Scale{parse_rational(text_field(rec, "a")),
                                 parse_rational(text_field(rec, "b"))});
        else
            throw DomainError("unknown generator kind \"" + kind + "\"");
    }
    return AutWord(table, std::move(gens));
}

json aut_to_json(const ThreefoldAut& f) {
    return json{{"kind", "threefold-aut"},
                {"params", params_to_json(f.threefold().params)},
                {"images", images_to_json(f.images())},
                {"inverse_images", images_to_json(f.inverse_images())},
                {"provenance", f.provenance()}};
}

ThreefoldAut aut_from_json(const json& j, const VarTablePtr& table) {
    require_kind(j, "threefold-aut");
    Threefold X(params_from_json(field(j, "params")), table);
    return ThreefoldAut(X, images_from_json(field(j, "images"), table),
                        images_from_json(field(j, "inverse_images"), table),
                        text_field(j, "provenance"));
}

json ambient_to_json(const AmbientAut& f) {
    return json{{"kind", "ambient-aut"},
                {"params", params_to_json(f.threefold().params)},
                {"images", images_to_json(f.images())},
                {"inverse_images", images_to_json(f.inverse_images())},
                {"alpha", to_text(f.alpha())},
                {"beta", to_text(f.beta())},
                {"quotient", to_text(f.quotient())},
                {"provenance", f.provenance()}};
}

AmbientAut ambient_from_json(const json& j, const VarTablePtr& table) {
    require_kind(j, "ambient-aut");
    Threefold X(params_from_json(field(j, "params")), table);
    return AmbientAut(X, images_from_json(field(j, "images"), table),
                      images_from_json(field(j, "inverse_images"), table),
                      parse_polynomial(text_field(j, "alpha"), table),
                      parse_polynomial(text_field(j, "beta"), table),
                      parse_polynomial(text_field(j, "quotient"), table),
                      text_field(j, "provenance"));
}

} // namespace kr
