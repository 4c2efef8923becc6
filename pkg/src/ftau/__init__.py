"""Exact computations in the irrational-slope Thompson group F_tau."""

from .elements import IDENTITY, Element, equals, evaluate, invert, multiply, reduce
from .homs import AbelianImage, abelianise, in_commutator
from .metrics import BfsBall, MetricReport, bfs_ball, distortion_report, metric_D, metric_N
from .trees import Caret, Partition, format_tree, parse_tree, tree_partition
from .words import NormalForm, format_word, normal_form, normalize, parse_word, word_to_element
from .ztau import ONE, TAU, ZERO, ZTau

__version__ = "0.1.0"
