# Copyright (c) 2024 pyconlmc developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""
Progress notifications for experiment jobs.
"""
from __future__ import annotations
import asyncio
from functools import wraps
from asyncio import Task
from typing import Any, Callable, Coroutine, cast, Optional, Union
import logging

_LOGGER = logging.getLogger(__name__)

Callback = Optional[
    Union[
        Callable[..., None],
        Callable[..., Coroutine[None, None, None]],
    ]
]


class JobCallback:
    """
    Schedules user supplied progress callbacks on the running event loop.

    Both plain functions and coroutine functions are accepted, the former
    are wrapped into a coroutine so either kind runs as a task. Exceptions
    raised by a callback are logged and never propagate into the job that
    triggered it.
    """
    @staticmethod
    def invoke(
        callback: Callback, *args: Any, **kwargs: Any
    ) -> Optional[Task[None]]:
        """
        Invokes the callback as an `asyncio` task.

        :param callback: Callable to invoke, nothing is done if unset
        :return: The task running the callback, if any
        """
        if not callback:
            return None

        _LOGGER.debug('Invoking job callback %s (args: %s, kwargs: %s)',
                      callback, args, kwargs)

        if asyncio.iscoroutinefunction(callback):
            coro = callback(*args, **kwargs)
        else:
            func = cast(Callable[..., None], callback)

            @wraps(func)
            async def wrapper(*w_args: Any, **w_kwargs: Any) -> None:
                return func(*w_args, **w_kwargs)

            coro = wrapper(*args, **kwargs)

        task = asyncio.create_task(coro)

        def reap_callback_exception(task: Task[Any]) -> None:
            """
            Logs the exception of a failed callback, so that `asyncio` does
            not complain it was never retrieved.
            """
            if task.cancelled():
                return
            exc = task.exception()
            if exc:
                _LOGGER.error(
                    "Job callback '%s(...)' failed:",
                    cast(
                        Coroutine[Any, Any, None], task.get_coro()
                    ).__qualname__,
                    exc_info=exc, stack_info=False
                )

        task.add_done_callback(reap_callback_exception)
        return task
