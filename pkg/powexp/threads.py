import threading


class ThreadGroup:
    """
    Run independent tasks on threads. Results are kept in submission order,
    and the first failing task's exception is re-raised once every thread has
    been joined.
    """

    def __enter__(self):
        self.pending_threads = []
        self.results = []
        self.exceptions = {}
        return self

    def __exit__(self, exc_type, *args):
        for thread in self.pending_threads:
            thread.join()

        if exc_type is not None:
            return False

        for tid in range(len(self.pending_threads)):
            if tid in self.exceptions:
                raise self.exceptions[tid]

    def do(self, function, *args, **kwargs):
        tid = len(self.pending_threads)
        self.results.append(None)

        def catch_errors(*args, **kwargs):
            try:
                self.results[tid] = function(*args, **kwargs)
            except Exception as ex:
                self.exceptions[tid] = ex

        t = threading.Thread(target=catch_errors, args=args, kwargs=kwargs)
        t.start()

        self.pending_threads.append(t)
        return t


def map_ordered(function, items, parallel=True):
    """Apply function to every item, results ordered like items."""
    if not parallel:
        return [function(item) for item in items]

    with ThreadGroup() as tg:
        for item in items:
            tg.do(function, item)

    return tg.results
