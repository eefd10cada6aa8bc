#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bigraph/bigraph.hpp"
#include "bigraph/csp.hpp"
#include "bigraph/embedding.hpp"

namespace bigraph {

enum class InstanceKind { lge, pge, bge };

struct EncodeOptions {
    // emit the passive-context exclusion family (guest roots may not land
    // under a passive host ancestor)
    bool respect_activity = true;
};

// Bidirectional map between semantic keys and model variable ids. Creation
// order is normative for solution enumeration: all N_hh, then N_ph, then
// N_pp, then F, then M, each block in lexicographic key order.
class VarRegistry {
public:
    void build(const Bigraph& guest, const Bigraph& host, InstanceKind kind, csp::Model& model);

    // key spaces (canonically sorted)
    const std::vector<Handle>& guest_handles() const { return guest_handles_; }
    const std::vector<Handle>& host_handles() const { return host_handles_; }
    const std::vector<Point>& guest_points() const { return guest_points_; }
    const std::vector<Point>& host_points() const { return host_points_; }
    const std::vector<Place>& guest_places() const { return guest_places_; }
    const std::vector<Place>& host_places() const { return host_places_; }

    bool has_link_vars() const { return kind_ != InstanceKind::pge; }
    bool has_place_vars() const { return kind_ != InstanceKind::lge; }

    // N_hh(guestHandle, hostHandle): flux capacity between handles
    int nhh(const Handle& g, const Handle& h) const;
    // N_ph(hostPoint): direct edge from a host point to its own handle
    int nph(const Point& host_point) const;
    // N_pp(hostPoint, guestPoint)
    int npp(const Point& host_point, const Point& guest_point) const;
    // F(guestHandle, hostHandle): 0/1 handle-map indicator
    int ff(const Handle& g, const Handle& h) const;
    // M(hostPlace, guestPlace): 0/1 place-match indicator
    int mm(const Place& host_place, const Place& guest_place) const;

private:
    InstanceKind kind_ = InstanceKind::bge;
    std::vector<Handle> guest_handles_, host_handles_;
    std::vector<Point> guest_points_, host_points_;
    std::vector<Place> guest_places_, host_places_;
    std::map<Handle, int> gh_idx_, hh_idx_;
    std::map<Point, int> gp_idx_, hp_idx_;
    std::map<Place, int> gpl_idx_, hpl_idx_;
    int nhh_base_ = -1, nph_base_ = -1, npp_base_ = -1, ff_base_ = -1, mm_base_ = -1;
};

struct EncodedInstance {
    InstanceKind kind = InstanceKind::bge;
    EncodeOptions options;
    Bigraph guest, host;
    csp::Model model;
    VarRegistry registry;
    // rows/vars actually emitted, keyed by family tag (e.g. "N_pp", "lge-cs7")
    std::map<std::string, long long> family_vars, family_cons;
};

EncodedInstance encode_lge(const Bigraph& guest, const Bigraph& host);
EncodedInstance encode_pge(const Bigraph& guest, const Bigraph& host, EncodeOptions opts = {});
EncodedInstance encode_bge(const Bigraph& guest, const Bigraph& host, EncodeOptions opts = {});

// The paper's solution -> embedding translation. Throws std::logic_error on
// a solution that does not satisfy the uniqueness the encoding guarantees
// (that would be an encoder bug, not user error).
Embedding decode(const EncodedInstance& inst, const csp::Solution& s);

// The reverse translation; phi must be a valid embedding (oracle-checkable).
csp::Solution embedding_to_solution(const EncodedInstance& inst, const Embedding& phi);

// Facade: encode_bge, solve, decode; deterministic order; one result per
// embedding.
class EmbeddingStream {
public:
    EmbeddingStream(const Bigraph& guest, const Bigraph& host, EncodeOptions opts = {});
    EmbeddingStream(const EmbeddingStream&) = delete;
    EmbeddingStream& operator=(const EmbeddingStream&) = delete;
    bool next(Embedding& out);
    const EncodedInstance& instance() const { return inst_; }

private:
    EncodedInstance inst_;
    csp::SolutionStream stream_;
};

std::vector<Embedding> enumerate_embeddings(const Bigraph& guest, const Bigraph& host,
                                            EncodeOptions opts = {});
std::optional<Embedding> first_embedding(const Bigraph& guest, const Bigraph& host,
                                         EncodeOptions opts = {});
long long count_embeddings(const Bigraph& guest, const Bigraph& host, EncodeOptions opts = {});

// Closed-form predicted variable/constraint counts per family; matches the
// generated model exactly.
struct SizeReport {
    std::map<std::string, long long> vars, cons;
    long long var_total() const;
    long long con_total() const;
};

SizeReport size_formulas(const Bigraph& guest, const Bigraph& host, InstanceKind kind,
                         EncodeOptions opts = {});

} // namespace bigraph
