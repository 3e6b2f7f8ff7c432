import threading

## Networks under construction
_local = threading.local()


def _stack():
    stack = getattr(_local, "networks", None)
    if stack is None:
        stack = _local.networks = []
    return stack


def get_current_network():
    """
    A helper method for getting the network currently being built on this
    thread (None outside of a `with Network(...)` block)
    """
    stack = _stack()
    return stack[-1] if stack else None


def enter_network(network):
    """
    A helper method for making a network the current one
    """
    _stack().append(network)


def exit_network():
    """
    A helper method for returning to the previously current network
    """
    _stack().pop()
