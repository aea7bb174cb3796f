from qftbell.commands.evaluate import eval_diamond, eval_tt
from qftbell.commands.kernels import kernels_verify
from qftbell.commands.reproduce import reproduce
from qftbell.commands.search import optimize, scan
from qftbell.commands.smear import smear
