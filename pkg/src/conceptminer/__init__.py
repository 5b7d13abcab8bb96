"""Contrastive-corpus concept mining.

Identify words statistically salient to a target concept with
log-likelihood keyness, relate them through distributional similarity
over grammatical-relation contexts, cluster the resulting graphs with
Chinese Whispers, and curate the clusters into a named, machine-readable
component ontology.
"""

__version__ = "0.1.0"

from .annotate import AnnotatedToken, CorpusManifest, PosCategory

__all__ = ["AnnotatedToken", "CorpusManifest", "PosCategory", "__version__"]
