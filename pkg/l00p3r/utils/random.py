"""
Random-number utility functions.
"""
import numpy as np


def sample_words(rng, words, count):
    """
    Distinct words drawn without replacement, in their original order.
    """
    words = list(words)
    assert count >= 0, f"Expected non-negative count, got {count}"
    if count >= len(words):
        return words
    picked = np.sort(rng.choice(len(words), size=count, replace=False))
    return [words[_i] for _i in picked]
