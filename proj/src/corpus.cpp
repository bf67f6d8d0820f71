#include "corrview/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "corrview/errors.hpp"
#include "corrview/log.hpp"

namespace corrview {

using nlohmann::json;

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "NOUN";
    case Pos::kAdj: return "ADJ";
    case Pos::kAdv: return "ADV";
    case Pos::kVerb: return "VERB";
    case Pos::kOther: return "OTHER";
  }
  return "OTHER";
}

std::string_view to_string(NeClass ne) {
  switch (ne) {
    case NeClass::kPerson: return "PERSON";
    case NeClass::kOrganization: return "ORGANIZATION";
    case NeClass::kLocation: return "LOCATION";
    case NeClass::kMisc: return "MISC";
  }
  return "MISC";
}

std::string_view to_string(Viewpoint v) {
  return v == Viewpoint::kPalestinian ? "palestinian" : "israeli";
}

std::optional<Pos> parse_pos(std::string_view s) {
  for (Pos p : {Pos::kNoun, Pos::kAdj, Pos::kAdv, Pos::kVerb, Pos::kOther}) {
    if (s == to_string(p)) return p;
  }
  return std::nullopt;
}

std::optional<NeClass> parse_ne_class(std::string_view s) {
  for (NeClass n :
       {NeClass::kPerson, NeClass::kOrganization, NeClass::kLocation, NeClass::kMisc}) {
    if (s == to_string(n)) return n;
  }
  return std::nullopt;
}

std::optional<Viewpoint> parse_viewpoint(std::string_view s) {
  if (s == "palestinian") return Viewpoint::kPalestinian;
  if (s == "israeli") return Viewpoint::kIsraeli;
  return std::nullopt;
}

std::string_view to_string(PartitionScheme scheme) {
  switch (scheme) {
    case PartitionScheme::kOpinionNe: return "opinion+ne";
    case PartitionScheme::kOpinion: return "opinion";
    case PartitionScheme::kAdjNe: return "adj+ne";
    case PartitionScheme::kNe: return "ne";
  }
  return "opinion+ne";
}

std::optional<PartitionScheme> parse_scheme(std::string_view s) {
  for (PartitionScheme p : kAllSchemes) {
    if (s == to_string(p)) return p;
  }
  if (s == "OPINION_NE") return PartitionScheme::kOpinionNe;
  if (s == "OPINION") return PartitionScheme::kOpinion;
  if (s == "ADJ_NE") return PartitionScheme::kAdjNe;
  if (s == "NE") return PartitionScheme::kNe;
  return std::nullopt;
}

Modality route(PartitionScheme scheme, Pos pos, bool is_named_entity) {
  const bool ne_aware = scheme != PartitionScheme::kOpinion;
  if (ne_aware && is_named_entity) return Modality::kOpinion;
  if (pos == Pos::kOther) return Modality::kDropped;
  switch (scheme) {
    case PartitionScheme::kOpinionNe:
    case PartitionScheme::kOpinion:
      return pos == Pos::kNoun ? Modality::kTopical : Modality::kOpinion;
    case PartitionScheme::kAdjNe:
      return pos == Pos::kAdj ? Modality::kOpinion : Modality::kTopical;
    case PartitionScheme::kNe:
      return Modality::kTopical;
  }
  return Modality::kDropped;
}

Vocabulary::Vocabulary(std::vector<std::string> words) : words_(std::move(words)) {
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], static_cast<int>(i)).second) {
      throw ValidationError("duplicate vocabulary entry '" + words_[i] + "'");
    }
  }
}

std::optional<int> Vocabulary::id(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

bool valid_word(const std::string& s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) || std::isupper(c);
  });
}

const json& require(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(line, std::string("missing field '") + key + "'");
  return *it;
}

AnnotatedToken parse_token(const json& t, std::size_t line) {
  if (!t.is_object()) throw ParseError(line, "token is not an object");
  AnnotatedToken tok;
  const json& surface = require(t, "surface", line);
  const json& lemma = require(t, "lemma", line);
  const json& pos = require(t, "pos", line);
  if (!surface.is_string() || !lemma.is_string() || !pos.is_string()) {
    throw ParseError(line, "token fields surface/lemma/pos must be strings");
  }
  tok.surface = surface.get<std::string>();
  tok.lemma = lemma.get<std::string>();
  if (!valid_word(tok.surface) || !valid_word(tok.lemma)) {
    throw ParseError(line, "token '" + tok.surface + "/" + tok.lemma +
                               "' must be non-empty lowercase without whitespace");
  }
  auto p = parse_pos(pos.get<std::string>());
  if (!p) throw ParseError(line, "unknown pos '" + pos.get<std::string>() + "'");
  tok.pos = *p;
  auto ne_it = t.find("ne");
  if (ne_it != t.end() && !ne_it->is_null()) {
    if (!ne_it->is_string()) throw ParseError(line, "ne must be a string or null");
    auto ne = parse_ne_class(ne_it->get<std::string>());
    if (!ne) throw ParseError(line, "unknown ne class '" + ne_it->get<std::string>() + "'");
    tok.ne_class = *ne;
  }
  return tok;
}

RawDocument parse_document(const std::string& text, std::size_t line) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError(line, "document is not a JSON object");

  RawDocument doc;
  const json& id = require(obj, "doc_id", line);
  if (!id.is_string() || id.get<std::string>().empty()) {
    throw ParseError(line, "doc_id must be a non-empty string");
  }
  doc.doc_id = id.get<std::string>();

  auto label_it = obj.find("label");
  if (label_it != obj.end() && !label_it->is_null()) {
    if (!label_it->is_string()) throw ParseError(line, "label must be a string or null");
    doc.label = parse_viewpoint(label_it->get<std::string>());
    if (!doc.label) throw ParseError(line, "unknown label '" + label_it->get<std::string>() + "'");
  }

  const json& tokens = require(obj, "tokens", line);
  if (!tokens.is_array()) throw ParseError(line, "tokens must be an array");
  doc.tokens.reserve(tokens.size());
  for (const json& t : tokens) doc.tokens.push_back(parse_token(t, line));
  return doc;
}

}  // namespace

std::vector<RawDocument> read_annotated_corpus(std::istream& in) {
  std::vector<RawDocument> docs;
  std::set<std::string> seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    RawDocument doc = parse_document(text, line);
    if (!seen.insert(doc.doc_id).second) {
      throw ValidationError("line " + std::to_string(line) + ": duplicate doc_id '" +
                            doc.doc_id + "'");
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<RawDocument> load_annotated_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file '" + path.string() + "'");
  return read_annotated_corpus(in);
}

void write_annotated_corpus(std::ostream& out, const std::vector<RawDocument>& docs) {
  for (const RawDocument& doc : docs) {
    json obj;
    obj["doc_id"] = doc.doc_id;
    obj["label"] = doc.label ? json(std::string(to_string(*doc.label))) : json(nullptr);
    json tokens = json::array();
    for (const AnnotatedToken& t : doc.tokens) {
      tokens.push_back({{"surface", t.surface},
                        {"lemma", t.lemma},
                        {"pos", std::string(to_string(t.pos))},
                        {"ne", t.ne_class ? json(std::string(to_string(*t.ne_class)))
                                          : json(nullptr)}});
    }
    obj["tokens"] = std::move(tokens);
    out << obj.dump() << '\n';
  }
}

namespace {

struct LemmaTally {
  long topical = 0;
  long opinion = 0;
  long total() const { return topical + opinion; }
  Modality winner() const { return topical > opinion ? Modality::kTopical : Modality::kOpinion; }
};

template <typename RouteFn>
BimodalCorpus build_corpus(const std::vector<RawDocument>& docs, int min_count, RouteFn routing) {
  if (min_count < 1) throw ParameterError("min_count must be >= 1");

  std::map<std::string, LemmaTally> tally;  // ordered: ids are lexicographic
  for (const RawDocument& doc : docs) {
    for (const AnnotatedToken& tok : doc.tokens) {
      Modality m = routing(tok);
      if (m == Modality::kTopical) ++tally[tok.lemma].topical;
      if (m == Modality::kOpinion) ++tally[tok.lemma].opinion;
    }
  }

  std::vector<std::string> topical_words, opinion_words;
  for (const auto& [lemma, t] : tally) {
    if (t.total() < min_count) continue;
    if (t.topical > 0 && t.opinion > 0) {
      log::info("lemma '" + lemma + "' routed to both modalities; using majority");
    }
    (t.winner() == Modality::kTopical ? topical_words : opinion_words).push_back(lemma);
  }

  BimodalCorpus corpus;
  corpus.topical_vocab = Vocabulary(std::move(topical_words));
  corpus.opinion_vocab = Vocabulary(std::move(opinion_words));

  std::size_t dropped = 0;
  for (const RawDocument& doc : docs) {
    BimodalDocument out;
    out.doc_id = doc.doc_id;
    out.label = doc.label;
    for (const AnnotatedToken& tok : doc.tokens) {
      if (routing(tok) == Modality::kDropped) continue;
      if (auto id = corpus.topical_vocab.id(tok.lemma)) {
        out.topical_ids.push_back(*id);
      } else if (auto oid = corpus.opinion_vocab.id(tok.lemma)) {
        out.opinion_ids.push_back(*oid);
      }
    }
    if (out.topical_ids.empty() && out.opinion_ids.empty()) {
      log::warn("document '" + doc.doc_id + "' has no retained tokens; dropped");
      ++dropped;
      continue;
    }
    corpus.docs.push_back(std::move(out));
  }
  if (corpus.docs.empty()) {
    throw EmptyCorpusError("all " + std::to_string(dropped) +
                           " documents were dropped by the partition");
  }
  return corpus;
}

}  // namespace

BimodalCorpus apply_partition(const std::vector<RawDocument>& docs, PartitionScheme scheme,
                              int min_count) {
  return build_corpus(docs, min_count, [scheme](const AnnotatedToken& t) {
    return route(scheme, t.pos, t.is_named_entity());
  });
}

BimodalCorpus apply_unimodal(const std::vector<RawDocument>& docs, int min_count) {
  return build_corpus(docs, min_count, [](const AnnotatedToken& t) {
    if (t.pos == Pos::kOther && !t.is_named_entity()) return Modality::kDropped;
    return Modality::kTopical;
  });
}

CorpusStats corpus_stats(const BimodalCorpus& corpus) {
  CorpusStats s;
  s.num_docs = corpus.docs.size();
  s.topical_vocab_size = corpus.topical_vocab.size();
  s.opinion_vocab_size = corpus.opinion_vocab.size();
  for (const BimodalDocument& d : corpus.docs) {
    s.topical_tokens += d.topical_ids.size();
    s.opinion_tokens += d.opinion_ids.size();
    if (!d.label) {
      ++s.unlabeled_docs;
    } else if (*d.label == Viewpoint::kPalestinian) {
      ++s.palestinian_docs;
    } else {
      ++s.israeli_docs;
    }
  }
  return s;
}

}  // namespace corrview
