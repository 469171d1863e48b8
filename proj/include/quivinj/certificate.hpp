#pragma once

// Evidence attached to verdicts: labelled matrices plus short notes.

#include <string>
#include <utility>
#include <vector>

#include "ring.hpp"

namespace quivinj {

enum class CertificateKind { None, SectionMatrix, Resolution, IsomorphismPair, Bijection, Extension, NonExtendable };

inline const char* to_string(CertificateKind k) {
    switch (k) {
    case CertificateKind::None: return "none";
    case CertificateKind::SectionMatrix: return "section_matrix";
    case CertificateKind::Resolution: return "resolution";
    case CertificateKind::IsomorphismPair: return "isomorphism_pair";
    case CertificateKind::Bijection: return "bijection";
    case CertificateKind::Extension: return "extension";
    case CertificateKind::NonExtendable: return "non_extendable";
    }
    return "?";
}

struct Certificate {
    CertificateKind kind = CertificateKind::None;
    std::vector<std::pair<std::string, Matrix>> matrices;
    std::vector<std::string> notes;

    void add(std::string label, Matrix m) { matrices.emplace_back(std::move(label), std::move(m)); }
    void note(std::string text) { notes.push_back(std::move(text)); }
};

}  // namespace quivinj
