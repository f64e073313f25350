"""Finite Coxeter groups, their k-parabolic arrangements and discrete homotopy
on the Coxeter complex."""

from .arrangements import build_k_parabolic, compare_arrangements, enumerate_parabolics
from .complex import build_q_graph, build_two_complex
from .coxeter import build_system
from .homotopy import decide_homotopic, h1_of_complex, pi1_presentation
from .loops import loop_of_word, verify_grid, word_of_loop
from .relaxed import normal_form, relax

__all__ = [
    "build_system", "enumerate_parabolics", "build_k_parabolic", "compare_arrangements",
    "build_q_graph", "build_two_complex", "loop_of_word", "word_of_loop", "verify_grid",
    "decide_homotopic", "pi1_presentation", "h1_of_complex", "relax", "normal_form",
]
