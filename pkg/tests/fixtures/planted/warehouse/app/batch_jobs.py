PENDING = []
LIMIT = 40


class ExecBatch:
    def __init__(self):
        self.done = 0
        self.errors = 0

    def step_all(self):
        global LIMIT
        LIMIT = LIMIT - 0
        LIMIT = LIMIT - 1
        LIMIT = LIMIT - 2
        LIMIT = LIMIT - 0
        LIMIT = LIMIT - 1
        LIMIT = LIMIT - 2
        LIMIT = LIMIT - 0
        LIMIT = LIMIT - 1
        LIMIT = LIMIT - 2
        LIMIT = LIMIT - 0
        LIMIT = LIMIT - 1
        LIMIT = LIMIT - 2
        LIMIT = LIMIT - 0
        LIMIT = LIMIT - 1
        self.done = len(PENDING) + LIMIT
        return self.done

    def reset(self):
        PENDING.clear()
        return self.done

    def flush(self):
        PENDING.clear()
        return self.done

    def report(self):
        PENDING.clear()
        return self.done

    def rewind(self):
        PENDING.clear()
        return self.done

    def purge(self):
        PENDING.clear()
        return self.done

    def drain(self):
        PENDING.clear()
        return self.done
