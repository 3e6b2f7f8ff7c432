import sys

from goformer.logger import info


def serve(session, instream=None, outstream=None):
    """
    Reads GTP commands line by line and writes each reply as soon as it is
    ready, until `quit` or end of input.

    Args:
        session: the `GtpSession` of this connection

        instream: command source (default: stdin)

        outstream: reply sink (default: stdout)
    """
    instream = instream if instream is not None else sys.stdin
    outstream = outstream if outstream is not None else sys.stdout
    info("gtp: session started")
    for line in instream:
        reply = session.handle(line)
        if reply is None:
            continue
        outstream.write(reply)
        outstream.flush()
        if session.closed:
            break
    info(f"gtp: session closed after {session.commands_handled} commands")
    return session.commands_handled
