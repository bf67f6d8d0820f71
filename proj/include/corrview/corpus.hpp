#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace corrview {

enum class Pos { kNoun, kAdj, kAdv, kVerb, kOther };
enum class NeClass { kPerson, kOrganization, kLocation, kMisc };

// Document labels follow the SVM sign convention: Palestinian is -1,
// Israeli is +1.
enum class Viewpoint : int { kPalestinian = -1, kIsraeli = +1 };

std::string_view to_string(Pos pos);
std::string_view to_string(NeClass ne);
std::string_view to_string(Viewpoint v);
std::optional<Pos> parse_pos(std::string_view s);
std::optional<NeClass> parse_ne_class(std::string_view s);
std::optional<Viewpoint> parse_viewpoint(std::string_view s);
inline int label_value(Viewpoint v) { return static_cast<int>(v); }

struct AnnotatedToken {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::kOther;
  std::optional<NeClass> ne_class;

  bool is_named_entity() const { return ne_class.has_value(); }
};

struct RawDocument {
  std::string doc_id;
  std::optional<Viewpoint> label;
  std::vector<AnnotatedToken> tokens;
};

// Which lemmas become opinion words. The names mirror the partitions
// "(opinion+ne)", "(opinion)", "(adj+ne)" and "(ne)".
enum class PartitionScheme { kOpinionNe, kOpinion, kAdjNe, kNe };

std::string_view to_string(PartitionScheme scheme);
std::optional<PartitionScheme> parse_scheme(std::string_view s);
inline constexpr PartitionScheme kAllSchemes[] = {
    PartitionScheme::kOpinionNe, PartitionScheme::kOpinion, PartitionScheme::kAdjNe,
    PartitionScheme::kNe};

enum class Modality { kTopical, kOpinion, kDropped };

// Routing of a single token occurrence. Total over every (scheme, pos, ne)
// combination.
//   OPINION_NE: any NE -> opinion; ADJ/ADV/VERB -> opinion; NOUN -> topical
//   OPINION:    NE ignored; ADJ/ADV/VERB -> opinion; NOUN -> topical
//   ADJ_NE:     any NE -> opinion; ADJ -> opinion; NOUN/ADV/VERB -> topical
//   NE:         any NE -> opinion; NOUN/ADJ/ADV/VERB -> topical
// Non-NE OTHER tokens are always dropped, as are NE OTHER tokens under
// OPINION.
Modality route(PartitionScheme scheme, Pos pos, bool is_named_entity);

class Vocabulary {
 public:
  Vocabulary() = default;
  // Words must be unique; ids follow the given order.
  explicit Vocabulary(std::vector<std::string> words);

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::string& word(std::size_t id) const { return words_.at(id); }
  std::optional<int> id(const std::string& word) const;
  bool contains(const std::string& word) const { return index_.count(word) > 0; }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
};

struct BimodalDocument {
  std::string doc_id;
  std::optional<Viewpoint> label;
  std::vector<int> topical_ids;
  std::vector<int> opinion_ids;
};

struct BimodalCorpus {
  Vocabulary topical_vocab;
  Vocabulary opinion_vocab;
  std::vector<BimodalDocument> docs;

  std::size_t num_docs() const { return docs.size(); }
};

struct CorpusStats {
  std::size_t num_docs = 0;
  std::size_t topical_vocab_size = 0;
  std::size_t opinion_vocab_size = 0;
  std::size_t topical_tokens = 0;
  std::size_t opinion_tokens = 0;
  std::size_t palestinian_docs = 0;
  std::size_t israeli_docs = 0;
  std::size_t unlabeled_docs = 0;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// Reads the annotated-corpus JSONL format: one document object per line with
// `doc_id`, `label` and `tokens`. Blank lines are skipped.
std::vector<RawDocument> load_annotated_corpus(const std::filesystem::path& path);
std::vector<RawDocument> read_annotated_corpus(std::istream& in);

// Writes documents in the same JSONL format read by load_annotated_corpus.
void write_annotated_corpus(std::ostream& out, const std::vector<RawDocument>& docs);

// Routes every token occurrence, resolves lemmas that landed in both
// modalities by corpus-wide majority (ties go to opinion), drops lemmas with
// fewer than min_count retained occurrences, and assigns ids in lexicographic
// order. Documents left with no ids are dropped with a warning.
BimodalCorpus apply_partition(const std::vector<RawDocument>& docs, PartitionScheme scheme,
                              int min_count = 1);

// Single-modality view for plain LDA: every retained token (the four content
// POS categories plus named entities) is topical; the opinion side is empty.
BimodalCorpus apply_unimodal(const std::vector<RawDocument>& docs, int min_count = 1);

CorpusStats corpus_stats(const BimodalCorpus& corpus);

}  // namespace corrview
