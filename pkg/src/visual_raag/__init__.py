"""Visual RAAG subgroups of right-angled Coxeter groups, and reflection subgroups of RAAGs."""

__version__ = "0.1.0"
