"""Language fingerprinting from spelling and sentence structure.

Pipeline: ingest corpora (corpus), transliterate to comparable ASCII
(translit), build character n-gram and POS tri-gram profiles (ngram,
posgram), compare languages with Manhattan distances (distance), derive
trees and similarity graphs (cluster), and train a feed-forward classifier
that recognizes a language from POS tri-gram probabilities alone (neural).
The cli module wires it all together.
"""

from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
