from goformer.goboard import Color, Move


class Node:
    """
    One search-tree node. Statistics are kept from the point of view of the
    player who made the move leading here, so a parent picks the child with
    the highest Q directly. `state` is filled in lazily the first time the
    node is reached.
    """
    __slots__ = ("move", "index", "parent", "prior", "visits", "value_sum",
                 "virtual_loss", "children", "state")

    def __init__(self, state=None, move=None, index=-1, parent=None, prior=1.0):
        self.state = state
        self.move = move
        self.index = index
        self.parent = parent
        self.prior = prior
        self.visits = 0
        self.value_sum = 0.0
        self.virtual_loss = 0
        self.children = {}

    @property
    def q(self):
        return self.value_sum / self.visits if self.visits else 0.0

    @property
    def is_expanded(self):
        return bool(self.children)

    @property
    def is_terminal(self):
        return self.state is not None and self.state.is_over

    def ensure_state(self):
        if self.state is None:
            self.state = self.parent.state.play(self.move)
        return self.state

    def mover_value(self, white_value):
        """Converts White's win value to the perspective of the player who moved here."""
        if self.state.to_play is Color.BLACK:
            return white_value
        return 1.0 - white_value

    def expand(self, priors):
        """
        Creates one child per legal move.

        Args:
            priors: dict flat move index -> prior (pass = N*N)
        """
        size = self.state.size
        for index, prior in priors.items():
            self.children[index] = Node(move=Move.from_index(index, size), index=index,
                                        parent=self, prior=prior)

    def detach(self):
        self.parent = None
        return self

    def __repr__(self):
        return (f"Node(move={self.move}, N={self.visits}, Q={self.q:.3f}, "
                f"P={self.prior:.3f}, vl={self.virtual_loss})")
