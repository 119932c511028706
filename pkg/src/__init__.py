"""
strmerge - k-way merging of sorted string lists with lcp-aware heaps and a trie
"""

__version__ = "0.1.0"
