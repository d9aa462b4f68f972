#pragma once

#include "annogate/core/types.hpp"
#include "annogate/provider/types.hpp"

namespace annogate::provider {

// Pure function of (codebook content, sample text); identical inputs give
// byte-identical bundles.
PromptBundle render_prompt(const core::Codebook& codebook, const core::TextSample& sample);

// Sample text is fenced between "<<<TEXT" and "<<<END" lines. Body lines that
// could collide with the fences (leading "<<<" or "\") carry a "\" escape so
// the framing stays unambiguous for any input.
std::string escape_sample_text(const std::string& text);
std::string unescape_sample_text(const std::string& escaped_body);

// 16-hex-char fingerprint of (system_text, user_text); scripted fixtures may
// match on it.
std::string bundle_hash(const PromptBundle& bundle);

}  // namespace annogate::provider
