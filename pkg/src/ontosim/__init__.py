"""Cross-language document similarity over knowledge-graph entity vectors.

Documents in different languages are mapped to sparse, language-independent
entity vectors derived from an open knowledge graph (Wikidata-style dumps).
Each document's entities, plus their ontological ancestors at bounded depth,
form the vector; cosine similarity between vectors drives both candidate
retrieval and character-level text alignment.
"""

__version__ = "0.1.0"

TOOL_NAME = "ontosim"
