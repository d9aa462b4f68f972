#include "annogate/provider/prompt.hpp"

#include "annogate/util.hpp"

namespace annogate::provider {

std::string escape_sample_text(const std::string& text) {
    std::string out;
    for (const auto& line : split_lines(text)) {
        if (line.rfind("<<<", 0) == 0 || line.rfind("\\", 0) == 0) out += '\\';
        out += line;
        out += '\n';
    }
    if (!out.empty()) out.pop_back();
    return out;
}

std::string unescape_sample_text(const std::string& escaped_body) {
    std::string out;
    for (const auto& line : split_lines(escaped_body)) {
        out += line.rfind("\\", 0) == 0 ? line.substr(1) : line;
        out += '\n';
    }
    if (!out.empty()) out.pop_back();
    return out;
}

PromptBundle render_prompt(const core::Codebook& codebook, const core::TextSample& sample) {
    PromptBundle bundle;
    bundle.codebook_version = codebook.version;
    bundle.dimension_keys = codebook.dimension_keys();

    std::string sys;
    sys += codebook.preamble;
    sys += "\n\nYou will classify one text sample on the following binary dimensions.\n";
    for (const auto& d : codebook.dimensions) {
        sys += "\n### " + d.key + " (" + d.name + ")\n";
        sys += d.definition;
        sys += "\n";
    }
    sys += "\n" + codebook.output_contract + "\n";

    // Machine-built closing instruction; parsing depends on this exact shape,
    // not on the codebook's own OUTPUT wording.
    sys += "\nYour final line must be exactly one line of the form:\nLABELS: ";
    for (size_t i = 0; i < bundle.dimension_keys.size(); ++i) {
        if (i) sys += "; ";
        sys += bundle.dimension_keys[i] + "=<0 or 1>";
    }
    sys += "\ncovering every dimension key in that order, where 1 means the dimension applies "
           "and 0 means it does not.";
    bundle.system_text = std::move(sys);

    bundle.user_text = "Classify the text between the <<<TEXT and <<<END markers.\n<<<TEXT\n" +
                       escape_sample_text(sample.text) + "\n<<<END";
    return bundle;
}

std::string bundle_hash(const PromptBundle& bundle) {
    std::string material = bundle.system_text;
    material += '\x1f';
    material += bundle.user_text;
    return hex64(fnv1a64(material));
}

}  // namespace annogate::provider
