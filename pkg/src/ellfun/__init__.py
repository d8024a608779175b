"""Elliptic curves over rational function fields k(T): invariants, minimal models, bad reduction over P^1."""
